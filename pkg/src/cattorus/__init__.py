"""Exact verification library for categorical tori built from lattices."""

__version__ = "0.1.0"
