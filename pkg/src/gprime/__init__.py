"""Invariant-preserving linear maps for reductive group representations."""

__version__ = "0.1.0"
