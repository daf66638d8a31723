"""Exact-combinatorics laboratory for fighting fish and left ternary trees."""

__version__ = "0.1.0"

from finfish.core import settings  # noqa: E402

__all__ = ["__version__", "settings"]
