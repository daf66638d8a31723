from fractions import Fraction

import pytest

from finfish.core.errors import DivergenceError, PreconditionError
from finfish.series.mseries import MSeries, SeriesRing, solve_fixed_point


def test_geometric_series():
    ring = SeriesRing(6, {"y", "a", "b", "u"})
    geometric = 1 / (1 - ring.t)
    assert geometric.t_coefficients() == [1] * 7
    assert (1 - ring.t) * geometric == ring.one


def test_fractions_stay_exact():
    ring = SeriesRing(3, {"y", "a", "b", "u"})
    half = 1 / (2 - ring.t)
    assert half.t_coefficients() == [Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 16)]


def test_ternary_fixed_point():
    ring = SeriesRing(5, {"y", "a", "b", "u"})
    T = solve_fixed_point(lambda T: 1 + ring.t * T ** 3, 5)
    assert T.t_coefficients() == [1, 1, 3, 12, 55, 273]


def test_non_contracting_functional_diverges():
    with pytest.raises(DivergenceError):
        solve_fixed_point(lambda X: X + 1, 3)


def test_delta_operators():
    ring = SeriesRing(2)
    cube = ring.u ** 3
    assert cube.delta_quotient() == 1 + ring.u + ring.u ** 2
    assert cube.delta() == ring.u + ring.u ** 2 + ring.u ** 3


def test_substitute_u():
    ring = SeriesRing(4)
    series = ring.u * ring.u + ring.t * ring.u
    assert series.substitute_u(ring.t) == 2 * ring.t * ring.t
    with pytest.raises(PreconditionError):
        series.substitute_u(ring.u)


def test_specialize_and_coefficients():
    ring = SeriesRing(3)
    series = ring.t * ring.y * ring.a + 3 * ring.t * ring.t * ring.b
    assert series.coefficient(1, y=1, a=1) == 1
    assert series.specialize(y=2, a=1).coefficient(1) == 2
    assert series.lines() == ["t^1 y^1 a^1 b^0 u^0 : 1", "t^2 y^0 a^0 b^1 u^0 : 3"]


def test_euler_operators():
    ring = SeriesRing(3)
    series = ring.t ** 2 * ring.y ** 3
    assert series.euler_t().coefficient(2, y=3) == 2
    assert series.euler("y").coefficient(2, y=3) == 3


def test_truncate_beyond_order():
    with pytest.raises(PreconditionError):
        MSeries.zero(2).truncate(5)


def test_unknown_fixed_variable():
    with pytest.raises(PreconditionError):
        SeriesRing(2, {"z"})
