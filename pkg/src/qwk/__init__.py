"""Exact computer algebra for the queer Lie superalgebra q(n)."""

__version__ = "0.1.0"
