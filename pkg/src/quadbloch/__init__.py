"""Scissors-congruence machinery over norm-Euclidean imaginary quadratic rings."""

__version__ = "0.1.0"

from .quad_ring import QuadInt, RingDesc, ring  # noqa: F401
