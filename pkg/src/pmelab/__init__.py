"""Numerical laboratory for porous-medium equations with a boundary-singular weight."""

__version__ = "0.1.0"
