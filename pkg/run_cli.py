#!/usr/bin/env python3
"""
Entry point script to run the minigraph command line without installing the package.
"""

import os
import sys

# Add src to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), "src"))

from cli.main import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
