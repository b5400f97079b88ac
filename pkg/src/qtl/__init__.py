"""Finite commutative unital quantales, their ideals and quantale spaces."""

__version__ = "0.1.0"
