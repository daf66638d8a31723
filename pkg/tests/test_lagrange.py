from fractions import Fraction

import pytest
import sympy as sp

from finfish.core.errors import PreconditionError
from finfish.formulas.closed_forms import fish_count_ij, marked_tail_count
from finfish.series.lagrange import (
    bivariate_lagrange,
    direct_extraction,
    fish_count_by_lagrange,
    marked_tail_count_by_lagrange,
    random_systems,
    x1,
    x2,
)


def test_fish_extractions():
    assert fish_count_by_lagrange(2, 2) == 4
    assert marked_tail_count_by_lagrange(2, 2) == 5


@pytest.mark.parametrize("i,j", [(1, 1), (1, 3), (2, 3), (3, 2), (3, 3), (4, 2)])
def test_extractions_match_closed_forms(i, j):
    assert fish_count_by_lagrange(i, j) == fish_count_ij(i, j)
    assert marked_tail_count_by_lagrange(i, j) == marked_tail_count(i, j)


def test_independent_geometric_system():
    # A1 = a1/(1-a1), A2 = a2/(1-a2)
    assert bivariate_lagrange(1 + x1, 1 + x2, x1 * x2, 1, 1) == 1
    assert bivariate_lagrange(1 + x1, 1 + x2, x1 * x2, 2, 3) == 1
    assert direct_extraction(1 + x1, 1 + x2, x1 * x2, 2, 3) == 1


def test_zero_constant_term_is_rejected():
    with pytest.raises(PreconditionError):
        bivariate_lagrange(x1, 1 + x2, x1, 1, 1)


def test_direct_extraction_needs_polynomials():
    with pytest.raises(PreconditionError):
        direct_extraction(1 + x1, 1 + x2, 1 / (1 - x1), 1, 1)


def test_lagrange_accepts_analytic_f():
    value = bivariate_lagrange(1 + x1, 1 + x2, sp.exp(x1), 1, 0)
    assert isinstance(value, Fraction)


def test_random_systems_agree():
    systems = random_systems(count=6)
    assert [s.seed for s in systems] == list(range(2017, 2023))
    for s in systems:
        assert bivariate_lagrange(s.phi1, s.phi2, s.F, s.n1, s.n2) == direct_extraction(s.phi1, s.phi2, s.F, s.n1, s.n2)
