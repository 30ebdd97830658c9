"""Exact Poincare polynomials of fully commutative elements of W(A_n)."""

__version__ = "0.1.0"
