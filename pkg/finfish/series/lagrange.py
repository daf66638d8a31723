"""Bivariate Lagrange inversion and a direct cross-check.

For the system A1 = a1 Phi1(A1, A2), A2 = a2 Phi2(A1, A2), both functions
extract the coefficient of a1^n1 a2^n2 in F(A1, A2). Expressions are sympy
expressions in the symbols ``x1`` and ``x2``.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List

import sympy as sp

from finfish.core.errors import PreconditionError

logger = logging.getLogger(__name__)

x1, x2 = sp.symbols("x1 x2")
a1, a2 = sp.symbols("a1 a2")


def _check_system(phi1: sp.Expr, phi2: sp.Expr, n1: int, n2: int) -> None:
    if n1 < 0 or n2 < 0:
        raise PreconditionError(f"coefficient indices must be nonnegative, got ({n1}, {n2})")
    for name, phi in (("Phi1", phi1), ("Phi2", phi2)):
        if sp.simplify(phi.subs({x1: 0, x2: 0})) == 0:
            raise PreconditionError(f"{name} has a zero constant term")


def _taylor_coefficient(expr: sp.Expr, p: int, q: int) -> sp.Rational:
    """[x1^p x2^q] expr, for polynomials or expressions analytic at the origin."""
    if p < 0 or q < 0:
        return sp.Integer(0)
    expanded = sp.expand(expr)
    if expanded.is_polynomial(x1, x2):
        return sp.Poly(expanded, x1, x2).coeff_monomial(x1 ** p * x2 ** q)
    derivative = sp.diff(expr, x1, p, x2, q) if (p or q) else expr
    return sp.nsimplify(derivative.subs({x1: 0, x2: 0}) / (sp.factorial(p) * sp.factorial(q)))


def _to_fraction(value: sp.Expr) -> Fraction:
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


def bivariate_lagrange(phi1: sp.Expr, phi2: sp.Expr, F: sp.Expr, n1: int, n2: int) -> Fraction:
    """[a1^n1 a2^n2] F(A1, A2) by the bivariate kernel formula."""
    _check_system(phi1, phi2, n1, n2)
    if n1 == 0 and n2 == 0:
        return _to_fraction(F.subs({x1: 0, x2: 0}))
    if n1 == 0 or n2 == 0:
        # A1 = 0 (or A2 = 0) identically; univariate inversion in the other slot
        if n1 == 0:
            x, n, phi, G = x2, n2, phi2.subs(x1, 0), F.subs(x1, 0)
        else:
            x, n, phi, G = x1, n1, phi1.subs(x2, 0), F.subs(x2, 0)
        kernel = sp.expand(sp.diff(G, x) * phi ** n)
        coefficient = sp.Poly(kernel, x).coeff_monomial(x ** (n - 1)) if kernel.is_polynomial(x) else (
            sp.diff(kernel, x, n - 1).subs(x, 0) / sp.factorial(n - 1)
        )
        return _to_fraction(sp.Rational(coefficient) / n)

    p1n = phi1 ** n1
    p2n = phi2 ** n2
    kernel = (
        sp.diff(F, x1, x2) * p1n * p2n
        + sp.diff(F, x1) * sp.diff(p1n, x2) * p2n
        + sp.diff(F, x2) * sp.diff(p2n, x1) * p1n
    )
    coefficient = _taylor_coefficient(kernel, n1 - 1, n2 - 1)
    return _to_fraction(sp.Rational(coefficient) / (n1 * n2))


def _truncate(poly: sp.Poly, n1: int, n2: int) -> sp.Poly:
    kept = {m: c for m, c in poly.terms() if m[0] <= n1 and m[1] <= n2}
    return sp.Poly.from_dict(kept or {(0, 0): 0}, a1, a2, domain=sp.QQ)


def _compose(expr: sp.Expr, A1: sp.Poly, A2: sp.Poly, n1: int, n2: int) -> sp.Poly:
    """expr(A1, A2) truncated to a1-degree n1 and a2-degree n2; expr must be a polynomial."""
    shape = sp.Poly(sp.expand(expr), x1, x2)
    one = sp.Poly(1, a1, a2, domain=sp.QQ)
    powers1 = [one]
    powers2 = [one]
    top1 = max((m[0] for m in shape.monoms()), default=0)
    top2 = max((m[1] for m in shape.monoms()), default=0)
    for _ in range(top1):
        powers1.append(_truncate(powers1[-1] * A1, n1, n2))
    for _ in range(top2):
        powers2.append(_truncate(powers2[-1] * A2, n1, n2))
    total = sp.Poly(0, a1, a2, domain=sp.QQ)
    for (i, j), c in shape.terms():
        total += _truncate(powers1[i] * powers2[j], n1, n2) * c
    return _truncate(total, n1, n2)


def direct_extraction(phi1: sp.Expr, phi2: sp.Expr, F: sp.Expr, n1: int, n2: int) -> Fraction:
    """The same coefficient by iterating the system and composing; polynomial inputs only."""
    _check_system(phi1, phi2, n1, n2)
    for name, expr in (("Phi1", phi1), ("Phi2", phi2), ("F", F)):
        if not sp.expand(expr).is_polynomial(x1, x2):
            raise PreconditionError(f"direct extraction needs a polynomial {name}")
    A1 = sp.Poly(0, a1, a2, domain=sp.QQ)
    A2 = sp.Poly(0, a1, a2, domain=sp.QQ)
    x_a1 = sp.Poly(a1, a1, a2, domain=sp.QQ)
    x_a2 = sp.Poly(a2, a1, a2, domain=sp.QQ)
    for _ in range(n1 + n2 + 1):
        A1, A2 = (
            _truncate(x_a1 * _compose(phi1, A1, A2, n1, n2), n1, n2),
            _truncate(x_a2 * _compose(phi2, A1, A2, n1, n2), n1, n2),
        )
    composed = _compose(F, A1, A2, n1, n2)
    return _to_fraction(composed.coeff_monomial(a1 ** n1 * a2 ** n2))


# -- the fish systems ---------------------------------------------------------------

FISH_PHI1 = (1 + x1) * (1 + x2) ** 2
FISH_PHI2 = (1 + x1) ** 2 * (1 + x2)
FISH_B = (1 + x1) * (1 + x2)
FISH_P1 = (1 + x1) * (1 + x2) * (1 - x1 * x2)


def fish_count_by_lagrange(i: int, j: int) -> Fraction:
    """Fish with i free lower-left and j free lower-right sides."""
    return bivariate_lagrange(FISH_PHI1, FISH_PHI2, FISH_P1, i - 1, j - 1)


def marked_tail_count_by_lagrange(i: int, j: int) -> Fraction:
    return bivariate_lagrange(FISH_PHI1, FISH_PHI2, FISH_B, i - 1, j - 1)


@dataclass
class RandomSystem:
    seed: int
    phi1: sp.Expr
    phi2: sp.Expr
    F: sp.Expr
    n1: int
    n2: int


def _random_poly(rng: random.Random, degree: int, constant: bool) -> sp.Expr:
    expr = sp.Integer(rng.randint(1, 3) if constant else rng.randint(-2, 3))
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            if i + j and rng.random() < 0.5:
                expr += rng.randint(-2, 3) * x1 ** i * x2 ** j
    return expr


def random_systems(count: int = 20, seed: int = 2017) -> List[RandomSystem]:
    """Deterministic small systems with nonzero constant terms in Phi1 and Phi2."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        out.append(
            RandomSystem(
                seed=seed + k,
                phi1=_random_poly(rng, 2, constant=True),
                phi2=_random_poly(rng, 2, constant=True),
                F=_random_poly(rng, 3, constant=False),
                n1=rng.randint(1, 3),
                n2=rng.randint(1, 3),
            )
        )
    return out
