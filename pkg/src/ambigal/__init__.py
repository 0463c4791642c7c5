"""Exact Galois-module decompositions of ambiguous ideals in cyclic
2-adic extensions of degree 2, 4, and 8."""

__version__ = "0.1.0"
