"""Exact verification of shift operators and factorizations for the Askey-scheme polynomials."""

__version__ = "1.0.0"
