"""Explicit partially symmetric decompositions of tensor products of W-states."""
__version__ = "0.1.0"
