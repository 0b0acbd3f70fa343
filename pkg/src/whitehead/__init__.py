"""Graded-dimension calculator for Theriault products and Whitehead products."""

from .series import DEFAULT_DEGREE, TruncSeries, geom_inverse, leq, shift

__all__ = ["DEFAULT_DEGREE", "TruncSeries", "geom_inverse", "leq", "shift"]
