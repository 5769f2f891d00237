"""Toolkit for the doubling-method standard L-function computations on GSp(2n)."""
__version__ = "0.1.0"
