"""Command-line front end: ``minigraph surface|curvature|verify|extremal``."""
