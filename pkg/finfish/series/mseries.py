"""Truncated power series in t with exact polynomial coefficients in y, a, b, u.

``MSeries.coeffs[k]`` is the coefficient of ``t^k`` as a sparse polynomial:
a dict from exponent tuples ``(y, a, b, u)`` to ints or Fractions. A series
of order N knows its coefficients for t^0..t^N exactly; binary operations
keep the smaller order.
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple, Union

from finfish.core.errors import DivergenceError, InexactDivisionError, PreconditionError
from finfish.data.formats import SeriesLine

logger = logging.getLogger(__name__)

VARIABLES = ("y", "a", "b", "u")
Mono = Tuple[int, int, int, int]
Number = Union[int, Fraction]
Poly = Dict[Mono, Number]

ONE: Mono = (0, 0, 0, 0)


def _norm(value: Number) -> Number:
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def _clean(poly: Dict[Mono, Number]) -> Poly:
    return {m: _norm(v) for m, v in poly.items() if v != 0}


def _add_into(target: Dict[Mono, Number], poly: Poly, scale: Number = 1) -> None:
    for mono, value in poly.items():
        target[mono] = target.get(mono, 0) + scale * value


def _poly_mul(p: Poly, q: Poly) -> Dict[Mono, Number]:
    out: Dict[Mono, Number] = {}
    for m1, v1 in p.items():
        for m2, v2 in q.items():
            mono = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3])
            out[mono] = out.get(mono, 0) + v1 * v2
    return out


class MSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Poly]):
        self.coeffs: Tuple[Poly, ...] = tuple(_clean(c) for c in coeffs)
        if not self.coeffs:
            raise PreconditionError("a series needs at least its constant coefficient")

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "MSeries":
        return cls({} for _ in range(order + 1))

    @classmethod
    def constant(cls, value: Number, order: int) -> "MSeries":
        return cls([{ONE: value}] + [{} for _ in range(order)])

    @classmethod
    def monomial(cls, order: int, t: int = 0, mono: Mono = ONE, value: Number = 1) -> "MSeries":
        coeffs: List[Poly] = [{} for _ in range(order + 1)]
        if t <= order:
            coeffs[t] = {mono: value}
        return cls(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def _coerce(self, other) -> "MSeries":
        if isinstance(other, MSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return MSeries.constant(other, self.order)
        return NotImplemented

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "MSeries":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            poly = dict(self.coeffs[k])
            _add_into(poly, other.coeffs[k])
            out.append(poly)
        return MSeries(out)

    __radd__ = __add__

    def __neg__(self) -> "MSeries":
        return MSeries({m: -v for m, v in c.items()} for c in self.coeffs)

    def __sub__(self, other) -> "MSeries":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "MSeries":
        return (-self) + other

    def __mul__(self, other) -> "MSeries":
        if isinstance(other, (int, Fraction)):
            return MSeries({m: v * other for m, v in c.items()} for c in self.coeffs)
        if not isinstance(other, MSeries):
            return NotImplemented
        n = min(self.order, other.order)
        out: List[Dict[Mono, Number]] = [{} for _ in range(n + 1)]
        for i in range(n + 1):
            p = self.coeffs[i]
            if not p:
                continue
            for j in range(n + 1 - i):
                q = other.coeffs[j]
                if q:
                    _add_into(out[i + j], _poly_mul(p, q))
        return MSeries(out)

    __rmul__ = __mul__

    def inverse(self) -> "MSeries":
        """Multiplicative inverse; the constant coefficient must be a nonzero number."""
        c0 = self.coeffs[0]
        if set(c0) != {ONE} or c0[ONE] == 0:
            raise PreconditionError("series inverse needs a nonzero numeric constant term")
        inv0 = Fraction(1) / c0[ONE]
        out: List[Poly] = [{ONE: _norm(inv0)}]
        for k in range(1, self.order + 1):
            acc: Dict[Mono, Number] = {}
            for i in range(1, k + 1):
                if self.coeffs[i] and out[k - i]:
                    _add_into(acc, _poly_mul(self.coeffs[i], out[k - i]))
            out.append(_clean({m: -v * inv0 for m, v in acc.items()}))
        return MSeries(out)

    def __truediv__(self, other) -> "MSeries":
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        if not isinstance(other, MSeries):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "MSeries":
        return self.inverse() * other

    def __pow__(self, exponent: int) -> "MSeries":
        if not isinstance(exponent, int) or exponent < 0:
            raise PreconditionError(f"series powers need a nonnegative integer, got {exponent}")
        result = MSeries.constant(1, self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # -- comparison -----------------------------------------------------------

    def first_difference(self, other: "MSeries") -> Optional[Tuple[int, Mono, Number, Number]]:
        """First (t order, monomial, mine, theirs) where the two series disagree."""
        n = min(self.order, other.order)
        for k in range(n + 1):
            p, q = self.coeffs[k], other.coeffs[k]
            for mono in sorted(set(p) | set(q)):
                if p.get(mono, 0) != q.get(mono, 0):
                    return k, mono, p.get(mono, 0), q.get(mono, 0)
        return None

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.first_difference(other) is None

    __hash__ = None

    def __repr__(self) -> str:
        return f"MSeries(order={self.order}, terms={sum(len(c) for c in self.coeffs)})"

    # -- reshaping --------------------------------------------------------------

    def truncate(self, order: int) -> "MSeries":
        if order > self.order:
            raise PreconditionError(f"cannot truncate order {self.order} series to {order}")
        return MSeries(self.coeffs[: order + 1])

    def pad(self, order: int) -> "MSeries":
        """Same coefficients, declared up to ``order`` with zeros beyond the known ones."""
        if order <= self.order:
            return self.truncate(order)
        return MSeries(self.coeffs + tuple({} for _ in range(order - self.order)))

    def shift(self, k: int) -> "MSeries":
        """Multiply by t^k, keeping the order."""
        if k == 0:
            return self
        return MSeries(tuple({} for _ in range(k)) + self.coeffs[: self.order + 1 - k])

    # -- coefficient access -------------------------------------------------------

    def coefficient(self, t: int, y: int = 0, a: int = 0, b: int = 0, u: int = 0) -> Number:
        if t > self.order:
            raise PreconditionError(f"t^{t} is beyond order {self.order}")
        return self.coeffs[t].get((y, a, b, u), 0)

    def t_coefficients(self) -> List[Number]:
        """Sum of each t-coefficient, i.e. the series with every other variable set to 1."""
        return [_norm(sum(c.values(), 0)) for c in self.coeffs]

    def items(self) -> Iterator[Tuple[int, Mono, Number]]:
        for k, poly in enumerate(self.coeffs):
            for mono in sorted(poly):
                yield k, mono, poly[mono]

    def lines(self) -> List[str]:
        return [
            SeriesLine(t=k, y=m[0], a=m[1], b=m[2], u=m[3], value=str(v)).render()
            for k, m, v in self.items()
        ]

    def degree(self, var: str) -> int:
        i = VARIABLES.index(var)
        return max((m[i] for c in self.coeffs for m in c), default=0)

    # -- operators on the variables -------------------------------------------------

    def euler_t(self) -> "MSeries":
        """t d/dt."""
        return MSeries({m: k * v for m, v in c.items()} for k, c in enumerate(self.coeffs))

    def euler(self, var: str) -> "MSeries":
        """var d/dvar for one of y, a, b, u."""
        i = VARIABLES.index(var)
        return MSeries({m: m[i] * v for m, v in c.items()} for c in self.coeffs)

    def specialize(self, **values: Number) -> "MSeries":
        """Evaluate the named variables at the given numbers."""
        idx = {VARIABLES.index(name): value for name, value in values.items()}
        out = []
        for poly in self.coeffs:
            acc: Dict[Mono, Number] = {}
            for mono, value in poly.items():
                scaled = value
                reduced = list(mono)
                for i, at in idx.items():
                    scaled = scaled * at ** mono[i]
                    reduced[i] = 0
                key = tuple(reduced)
                acc[key] = acc.get(key, 0) + scaled
            out.append(acc)
        return MSeries(out)

    def at_u_one(self) -> "MSeries":
        return self.specialize(u=1)

    def delta_quotient(self) -> "MSeries":
        """(P(1) - P(u)) / (1 - u), by exact division per t-coefficient."""
        out = []
        for k, poly in enumerate(self.coeffs):
            by_rest: Dict[Tuple[int, int, int], Dict[int, Number]] = {}
            for (y, a, b, u), value in poly.items():
                by_rest.setdefault((y, a, b), {})[u] = value
            quotient: Dict[Mono, Number] = {}
            for rest, column in by_rest.items():
                top = max(column)
                at_one = sum(column.values())
                # numerator P(1) - P(u), highest power first
                numerator = [-column.get(d, 0) for d in range(top, -1, -1)]
                numerator[-1] += at_one
                # synthetic division by (u - 1)
                carry = 0
                digits = []
                for c in numerator:
                    carry = carry + c
                    digits.append(carry)
                remainder = digits.pop()
                if remainder != 0:
                    raise InexactDivisionError(f"t^{k}: remainder {remainder} dividing by 1-u")
                # digits are the quotient by (u - 1), highest power first; negate for (1 - u)
                for power, c in zip(range(top - 1, -1, -1), digits):
                    if c:
                        quotient[(*rest, power)] = -c
            out.append(quotient)
        return MSeries(out)

    def delta(self) -> "MSeries":
        """u (P(u) - P(1)) / (u - 1): each u^k becomes u + ... + u^k."""
        u = MSeries.monomial(self.order, 0, (0, 0, 0, 1))
        return u * self.delta_quotient()

    def substitute_u(self, value: "MSeries") -> "MSeries":
        """Replace u by ``value``, which must not involve u."""
        if value.degree("u"):
            raise PreconditionError("substituted series must be free of u")
        n = min(self.order, value.order)
        top = self.degree("u")
        powers = [MSeries.constant(1, n)]
        for _ in range(top):
            powers.append(powers[-1] * value)
        result = MSeries.zero(n)
        for k in range(n + 1):
            by_power: Dict[int, Dict[Mono, Number]] = {}
            for (y, a, b, u), v in self.coeffs[k].items():
                by_power.setdefault(u, {})[(y, a, b, 0)] = v
            for power, poly in sorted(by_power.items()):
                coefficient = MSeries([{} for _ in range(k)] + [poly] + [{} for _ in range(n - k)])
                result = result + coefficient * powers[power]
        return result


class SeriesRing:
    """Generators t, y, a, b, u at a fixed order; ``fixed`` variables are set to 1."""

    def __init__(self, order: int, fixed: Iterable[str] = ()):
        if order < 0:
            raise PreconditionError(f"order must be nonnegative, got {order}")
        self.order = order
        self.fixed = frozenset(fixed)
        unknown = self.fixed - set(VARIABLES)
        if unknown:
            raise PreconditionError(f"unknown variables {sorted(unknown)}")

    @property
    def one(self) -> MSeries:
        return MSeries.constant(1, self.order)

    @property
    def zero(self) -> MSeries:
        return MSeries.zero(self.order)

    @property
    def t(self) -> MSeries:
        return MSeries.monomial(self.order, 1)

    def var(self, name: str) -> MSeries:
        if name in self.fixed:
            return self.one
        exps = [0, 0, 0, 0]
        exps[VARIABLES.index(name)] = 1
        return MSeries.monomial(self.order, 0, tuple(exps))

    @property
    def y(self) -> MSeries:
        return self.var("y")

    @property
    def a(self) -> MSeries:
        return self.var("a")

    @property
    def b(self) -> MSeries:
        return self.var("b")

    @property
    def u(self) -> MSeries:
        return self.var("u")

    def finish(self, series: MSeries) -> MSeries:
        """Collapse fixed variables that were kept live during a build."""
        values = {name: 1 for name in self.fixed}
        return series.specialize(**values) if values else series


def solve_fixed_point(functional: Callable[[MSeries], MSeries], order: int, start: Optional[MSeries] = None) -> MSeries:
    """Unique solution of X = F(X) up to ``order``, one t-order per iteration.

    ``functional`` must determine the coefficient of t^k from the coefficients
    of orders below k; a change at an already fixed order raises DivergenceError.
    """
    current = (start or MSeries.zero(0)).pad(0)
    for k in range(order + 1):
        candidate = functional(current.pad(k))
        if candidate.order < k:
            raise DivergenceError(f"functional lost precision at t^{k}")
        candidate = candidate.truncate(k)
        diff = candidate.truncate(k - 1).first_difference(current) if k else None
        if diff is not None:
            raise DivergenceError(f"iteration {k} changed an already fixed coefficient at t^{diff[0]}")
        current = candidate
    check = functional(current)
    diff = check.first_difference(current)
    if diff is not None:
        raise DivergenceError(f"fixed point check failed at t^{diff[0]} monomial {diff[1]}")
    logger.debug(f"fixed point solved to order {order} in {order + 1} iterations")
    return current
