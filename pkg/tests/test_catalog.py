import pytest

from finfish.core.errors import PreconditionError
from finfish.series.catalog import (
    SeriesCatalog,
    build_marked,
    build_P,
    build_parametrization,
    build_Pu_param,
    build_tree_series,
    build_U_V,
)
from finfish.series.mseries import SeriesRing

SPECIAL = {"y", "a", "b"}


def test_parametrization_counts_fish():
    _, P1 = build_parametrization(SeriesRing(7, SPECIAL))
    assert P1.t_coefficients() == [0, 1, 2, 6, 22, 91, 408, 1938]


def test_functional_equation_agrees_with_parametrization():
    ring = SeriesRing(5)
    _, P1 = build_parametrization(ring)
    assert build_P(ring).at_u_one() == P1


def test_fin_distribution_of_small_fish():
    P = build_P(SeriesRing(3, SPECIAL))
    # size 4: fin 3 for C3(A,1,A) and B-terms of fin 4 otherwise
    assert P.coefficient(3, u=2) == 1
    assert P.coefficient(3, u=3) == 5


def test_u_and_v():
    uv = build_U_V(SeriesRing(6, SPECIAL))
    B, _ = build_parametrization(SeriesRing(6, SPECIAL))
    assert uv.V == B * B
    assert uv.U == uv.U_prime


def test_marked_series_small_coefficients():
    marked = build_marked(SeriesRing(4, SPECIAL))
    # size 4: seven tails, one branch point, seventeen lower flat points
    assert marked.greater.coefficient(3) == 7
    assert marked.less.coefficient(3) == 1
    assert marked.minus.coefficient(3) == 17


def test_u_parametrization():
    _, Pu = build_Pu_param(SeriesRing(4))
    assert Pu == build_P(SeriesRing(4))


def test_tree_series():
    trees = build_tree_series(6, jmax=2)
    assert trees.T.t_coefficients() == [1, 1, 3, 12, 55, 273, 1428]
    assert trees.T_j[0].t_coefficients() == [1, 1, 2, 6, 22, 91, 408]
    assert trees.Tu_j[-1] == 1
    assert trees.T_j[1].coefficient(2) == 3
    assert trees.Tu_j[0].at_u_one() == trees.T_j[0]


def test_tree_series_needs_nonnegative_jmax():
    with pytest.raises(PreconditionError):
        build_tree_series(3, jmax=-1)


def test_catalog_lookup():
    catalog = SeriesCatalog(5, frozenset(SPECIAL))
    assert catalog.get("P1").t_coefficients()[1:] == [1, 2, 6, 22, 91]
    assert "T_3" in catalog.names()
    assert catalog.get("T_0").t_coefficients()[:4] == [1, 1, 2, 6]
    with pytest.raises(PreconditionError):
        catalog.get("Q")


def test_catalog_trees_need_specialization():
    with pytest.raises(PreconditionError):
        SeriesCatalog(3).get("T")
