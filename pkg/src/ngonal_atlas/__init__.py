"""Computations for n-gonal Riemann surfaces with cyclic n-gonal group."""
__version__ = "0.1.0"
