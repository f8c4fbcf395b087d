"""Periods of logarithmic connections, Gamma products and Jacobi sums."""

__version__ = "0.1.0"
