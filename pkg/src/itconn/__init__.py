"""Exact computer algebra for iterative derivations, truncated higher
differentials, connections, Frobenius descent and finite Galois examples
in positive characteristic."""

__version__ = "0.1.0"
