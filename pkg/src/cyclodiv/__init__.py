"""Cyclotomic polynomials, the divisors of x^n - 1, and their coefficient sets."""

__version__ = "0.1.0"
