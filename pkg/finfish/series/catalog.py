"""Builders for every named generating series of fighting fish and ternary trees.

Each builder takes a ``SeriesRing`` and returns exact truncated series.
Builders that differentiate in y keep y live internally and collapse the
ring's fixed variables only at the end.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

from finfish.core.errors import IdentityViolationError, PreconditionError
from finfish.series.mseries import MSeries, SeriesRing, solve_fixed_point

logger = logging.getLogger(__name__)


def require_equal(identity: str, left: MSeries, right: MSeries) -> None:
    """Raise IdentityViolationError at the first coefficient where the sides differ."""
    diff = left.first_difference(right)
    if diff is not None:
        k, mono, lhs, rhs = diff
        raise IdentityViolationError(identity, location=(k, *mono), expected=rhs, actual=lhs)


def _live_y(ring: SeriesRing) -> SeriesRing:
    return SeriesRing(ring.order, ring.fixed - {"y"})


# -- fish series ------------------------------------------------------------

def build_P(ring: SeriesRing) -> MSeries:
    """P(u) from the wasp-waist functional equation."""
    t, y, a, b, u = ring.t, ring.y, ring.a, ring.b, ring.u

    def step(P: MSeries) -> MSeries:
        return t * u * (1 + a * P) * (1 + b * P) + y * t * a * b * u * P * P.delta_quotient()

    return solve_fixed_point(step, ring.order)


def build_B(ring: SeriesRing) -> MSeries:
    t, y, a, b = ring.t, ring.y, ring.a, ring.b

    def step(B: MSeries) -> MSeries:
        w = a * b * B * B
        return t * (1 + y * w / (1 - w)) ** 2 * (1 + a * B) * (1 + b * B)

    return solve_fixed_point(step, ring.order)


def p1_from_B(ring: SeriesRing, B: MSeries) -> MSeries:
    y, a, b = ring.y, ring.a, ring.b
    w = a * b * B * B
    return B - y * a * b * B ** 3 * (1 + a * B) * (1 + b * B) / (1 - w) ** 2


def build_parametrization(ring: SeriesRing) -> Tuple[MSeries, MSeries]:
    """(B, P(1)) from the algebraic parametrization."""
    B = build_B(ring)
    return B, p1_from_B(ring, B)


def rs_from_B(ring: SeriesRing, B: MSeries) -> Tuple[MSeries, MSeries]:
    a, b = ring.a, ring.b
    w = a * b * B * B
    return a * B * (1 + b * B) / (1 - w), b * B * (1 + a * B) / (1 - w)


def build_RS(ring: SeriesRing) -> Tuple[MSeries, MSeries]:
    """The pair R̄, S̄ used for bivariate Lagrange inversion."""
    return rs_from_B(ring, build_B(ring))


@dataclass
class UVSeries:
    U: MSeries
    V: MSeries
    U_prime: MSeries


def build_U_V(ring: SeriesRing, check: bool = True) -> UVSeries:
    """U = 1/(1-V) with V = ytab (t d/dt) P(1), and U' = 1 + yabB^2/(1-abB^2)."""
    t, y, a, b = ring.t, ring.y, ring.a, ring.b
    B, P1 = build_parametrization(ring)
    V = y * t * a * b * P1.euler_t()
    U = 1 / (1 - V)
    w = a * b * B * B
    U_prime = 1 + y * w / (1 - w)
    if check:
        require_equal("U = 1 + yabB^2/(1-abB^2)", U, U_prime)
    return UVSeries(U=U, V=V, U_prime=U_prime)


@dataclass
class MarkedSeries:
    less: MSeries
    greater: MSeries
    minus: MSeries


def build_marked(ring: SeriesRing, check: bool = True) -> MarkedSeries:
    """Fish with a marked branch point, a marked tail, and half those with a marked flat point."""
    live = _live_y(ring)
    _, P1 = build_parametrization(live)
    less = P1.euler("y")
    greater = P1 + less
    # d/dt (t P(1)) counts fish with a marked point of the lower boundary or a tail
    minus = P1 + P1.euler_t() - greater
    if check:
        PU = build_P(live).substitute_u(build_U_V(live, check=False).U)
        require_equal("P> = P(U)", greater, PU)
        require_equal("P< = P(U) - P(1)", less, PU - P1)
    return MarkedSeries(less=ring.finish(less), greater=ring.finish(greater), minus=ring.finish(minus))


def build_Pu_param(ring: SeriesRing, check: bool = True) -> Tuple[MSeries, MSeries]:
    """(B(u), P(u)) from the parametrization in terms of B and B(u)."""
    t, y, a, b, u = ring.t, ring.y, ring.a, ring.b, ring.u
    B = build_B(ring)
    R, S = rs_from_B(ring, B)
    w = a * b * B * B

    def step(Bu: MSeries) -> MSeries:
        return t * u * (1 + a * Bu + y * a * Bu * S) * (1 + b * Bu + y * b * Bu * R)

    Bu = solve_fixed_point(step, ring.order)
    numerator = y * a * b * Bu * Bu * B * (1 + a * B) * (1 + b * B) * (1 - w + y * w)
    denominator = (1 - w) ** 2 * (1 - a * b * Bu * B + y * a * b * Bu * B)
    Pu = Bu - numerator / denominator
    if check:
        require_equal("P(u) parametrization", Pu, build_P(ring))
    return Bu, Pu


# -- ternary tree series ----------------------------------------------------------

TREE_FIXED = frozenset({"y", "a", "b"})


@dataclass
class TreeSeries:
    T: MSeries
    X: MSeries
    B: MSeries
    Tu: MSeries
    Bu: MSeries
    T_j: Dict[int, MSeries] = field(default_factory=dict)
    H_j: Dict[int, MSeries] = field(default_factory=dict)
    Tu_j: Dict[int, MSeries] = field(default_factory=dict)


def positive_tree_series(T: MSeries, X: MSeries, j: int) -> MSeries:
    """Generating series of j-positive trees by nodes."""
    if j == -2:
        return MSeries.zero(T.order)
    if j == -1:
        return MSeries.constant(1, T.order)
    return T * (1 - X ** (j + 5)) * (1 - X ** (j + 2)) / ((1 - X ** (j + 4)) * (1 - X ** (j + 3)))


def h_series(Tu: MSeries, X: MSeries, j: int) -> MSeries:
    if j == -2:
        return (X - 1) * Tu
    return (1 - X ** (j + 1)) * X * Tu - (1 + X) * (1 - X ** (j + 2))


def build_tree_series(order: int, jmax: int, check: bool = True) -> TreeSeries:
    """Tree series at y=a=b=1; ``Tu_j[j]`` counts j-positive trees by nodes (t) and core (u)."""
    if jmax < 0:
        raise PreconditionError(f"jmax must be nonnegative, got {jmax}")
    ring = SeriesRing(order, TREE_FIXED)
    t, u = ring.t, ring.u
    T = solve_fixed_point(lambda T: 1 + t * T ** 3, order)
    B = t * T * T
    X = solve_fixed_point(lambda X: B * (1 + X + X * X), order)
    Tu = solve_fixed_point(lambda Tu: 1 + t * u * Tu * Tu * T, order)
    Bu = t * u * Tu * Tu
    series = TreeSeries(T=T, X=X, B=B, Tu=Tu, Bu=Bu)
    for j in range(-2, jmax + 2):
        series.T_j[j] = positive_tree_series(T, X, j)
        series.H_j[j] = h_series(Tu, X, j)
    series.Tu_j[-2] = MSeries.zero(order)
    for j in range(-1, jmax + 2):
        series.Tu_j[j] = (
            Tu * series.H_j[j] / series.H_j[j - 1] * (1 - X ** (j + 2)) / (1 - X ** (j + 3))
        )
    if check:
        for j in range(-1, jmax + 1):
            rhs = 1 + t * u * series.Tu_j[j + 1] * series.Tu_j[j] * series.T_j[j - 1]
            require_equal(f"T_{j}(u) recurrence", series.Tu_j[j], rhs)
    return series


# -- catalog ----------------------------------------------------------------------

_INDEXED = re.compile(r"^(T|H|Tu)_(-?\d+)$")


class SeriesCatalog:
    """Named series at one order and specialization, built lazily and kept."""

    FISH_NAMES = (
        "P", "P1", "B", "U", "U_prime", "V", "P_less", "P_greater", "P_minus",
        "DeltaP", "Rbar", "Sbar", "Bu", "Pu_param",
    )
    TREE_NAMES = ("T", "X", "B_tree", "Tu", "B_tree_u")

    def __init__(self, order: int, fixed: frozenset = frozenset(), jmax: int = 6):
        self.ring = SeriesRing(order, fixed)
        self.jmax = jmax
        self._built: Dict[str, MSeries] = {}

    @property
    def order(self) -> int:
        return self.ring.order

    def names(self) -> List[str]:
        out = list(self.FISH_NAMES)
        if TREE_FIXED <= self.ring.fixed:
            out += list(self.TREE_NAMES)
            out += [f"T_{j}" for j in range(-2, self.jmax + 2)]
            out += [f"H_{j}" for j in range(-2, self.jmax + 2)]
            out += [f"Tu_{j}" for j in range(-2, self.jmax + 2)]
        return out

    def get(self, name: str) -> MSeries:
        if name not in self._built:
            logger.info(f"🧮 Building series {name} to order {self.order}")
            self._built.update(self._build(name))
        try:
            return self._built[name]
        except KeyError:
            raise PreconditionError(f"unknown series {name!r}") from None

    def _build(self, name: str) -> Dict[str, MSeries]:
        ring = self.ring
        builders: Dict[str, Callable[[], Dict[str, MSeries]]] = {
            "P": lambda: {"P": build_P(ring)},
            "P1": lambda: dict(zip(("B", "P1"), build_parametrization(ring))),
            "B": lambda: dict(zip(("B", "P1"), build_parametrization(ring))),
            "U": self._uv,
            "U_prime": self._uv,
            "V": self._uv,
            "P_less": self._marked,
            "P_greater": self._marked,
            "P_minus": self._marked,
            "DeltaP": lambda: {"DeltaP": self.get("P").delta()},
            "Rbar": lambda: dict(zip(("Rbar", "Sbar"), build_RS(ring))),
            "Sbar": lambda: dict(zip(("Rbar", "Sbar"), build_RS(ring))),
            "Bu": lambda: dict(zip(("Bu", "Pu_param"), build_Pu_param(ring))),
            "Pu_param": lambda: dict(zip(("Bu", "Pu_param"), build_Pu_param(ring))),
        }
        if name in builders:
            return builders[name]()
        indexed = _INDEXED.match(name)
        if name in self.TREE_NAMES or indexed:
            return self._trees()
        raise PreconditionError(f"unknown series {name!r}; known: {', '.join(self.names())}")

    def _uv(self) -> Dict[str, MSeries]:
        uv = build_U_V(self.ring)
        return {"U": uv.U, "V": uv.V, "U_prime": uv.U_prime}

    def _marked(self) -> Dict[str, MSeries]:
        marked = build_marked(self.ring)
        return {"P_less": marked.less, "P_greater": marked.greater, "P_minus": marked.minus}

    def _trees(self) -> Dict[str, MSeries]:
        if not TREE_FIXED <= self.ring.fixed:
            raise PreconditionError("tree series need y=a=b=1")
        trees = build_tree_series(self.order, self.jmax)
        out = {"T": trees.T, "X": trees.X, "B_tree": trees.B, "Tu": trees.Tu, "B_tree_u": trees.Bu}
        out.update({f"T_{j}": s for j, s in trees.T_j.items()})
        out.update({f"H_{j}": s for j, s in trees.H_j.items()})
        out.update({f"Tu_{j}": s for j, s in trees.Tu_j.items()})
        return out
