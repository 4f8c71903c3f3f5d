"""Exact enumeration and verification for two-column Springer fibers in types A and D."""

from . import bs, combinat, flags_a, flags_d, gf, pointcount, poly, weyl

__all__ = ["bs", "combinat", "flags_a", "flags_d", "gf", "pointcount", "poly", "weyl"]
__version__ = "0.1.0"
