"""Minimal Graph Analyzer - minimal graphs from Weierstrass-Enneper data and their curvature bounds."""

__version__ = "0.1.0"
