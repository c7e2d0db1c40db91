"""Exact computer algebra for Hilbert schemes of points.

Subpackages cover truncated series arithmetic, multivariate polynomials
over Q, Groebner bases, r-dimensional partitions, local equations of
Hilbert schemes at monomial ideals, multigraded Hilbert series, and the
localization identity checks tying them together.
"""

__version__ = "0.1.0"
