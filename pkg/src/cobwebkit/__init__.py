"""Exact-arithmetic construction and verification of cobweb spaces over finite distance spaces."""

from cobwebkit.rationals import format_rational, parse_rational

__version__ = "0.1.0"

__all__ = ["format_rational", "parse_rational", "__version__"]
