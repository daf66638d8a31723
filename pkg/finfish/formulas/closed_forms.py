"""Closed-form fish counts, evaluated with exact integer arithmetic."""

from math import comb, factorial
from typing import List

from finfish.core.errors import InexactDivisionError, PreconditionError


def _exact_div(numerator: int, denominator: int, formula: str) -> int:
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise InexactDivisionError(f"{formula}: {numerator} is not divisible by {denominator}")
    return quotient


def _require_positive(formula: str, **values: int) -> None:
    for name, value in values.items():
        if not isinstance(value, int) or value < 1:
            raise PreconditionError(f"{formula} needs {name} >= 1, got {value!r}")


def fish_count(n: int) -> int:
    """Fish with n+1 free lower sides: 2 C(3n, n) / ((n+1)(2n+1))."""
    _require_positive("fish_count", n=n)
    return _exact_div(2 * comb(3 * n, n), (n + 1) * (2 * n + 1), "fish_count")


def fish_count_ij(i: int, j: int) -> int:
    """Fish with i free lower-left and j free lower-right sides."""
    _require_positive("fish_count_ij", i=i, j=j)
    return _exact_div(comb(2 * i + j - 2, j - 1) * comb(2 * j + i - 2, i - 1), i * j, "fish_count_ij")


def fish_count_ij_factorial(i: int, j: int) -> int:
    _require_positive("fish_count_ij_factorial", i=i, j=j)
    return _exact_div(
        factorial(2 * i + j - 2) * factorial(2 * j + i - 2),
        factorial(i) * factorial(j) * factorial(2 * i - 1) * factorial(2 * j - 1),
        "fish_count_ij_factorial",
    )


def marked_tail_count(i: int, j: int) -> int:
    """Fish with i free lower-left and j free lower-right sides and one marked tail."""
    _require_positive("marked_tail_count", i=i, j=j)
    return _exact_div(
        (2 * i + 2 * j - 3) * comb(2 * i + j - 3, j - 1) * comb(2 * j + i - 3, i - 1),
        (2 * i - 1) * (2 * j - 1),
        "marked_tail_count",
    )


def marked_tail_count_lagrange_form(i: int, j: int) -> int:
    """The form coming straight out of Lagrange inversion; needs i, j >= 2."""
    if i < 2 or j < 2:
        raise PreconditionError(f"marked_tail_count_lagrange_form needs i, j >= 2, got ({i}, {j})")
    return _exact_div(
        (2 * i + 2 * j - 3) * comb(2 * j + i - 3, i - 2) * comb(2 * i + j - 3, j - 2),
        (i - 1) * (j - 1),
        "marked_tail_count_lagrange_form",
    )


def fish_counts(max_n: int) -> List[int]:
    """fish_count(1..max_n)."""
    return [fish_count(n) for n in range(1, max_n + 1)]


def ternary_tree_count(n: int) -> int:
    """Unrestricted ternary trees with n nodes."""
    if n < 0:
        raise PreconditionError(f"ternary_tree_count needs n >= 0, got {n}")
    return _exact_div(comb(3 * n, n), 2 * n + 1, "ternary_tree_count")
