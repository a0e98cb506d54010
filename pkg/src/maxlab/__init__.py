"""Numerical laboratory for bilinear and multilinear maximal averages."""

__version__ = "0.1.0"
