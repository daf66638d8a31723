import pytest

from finfish.core.config import Settings
from finfish.core.errors import BudgetExceededError, PreconditionError
from finfish.fish.grammar import build, enumerate_terms
from finfish.fish.oracle import census, enumerate_by_area, grow_all
from finfish.fish.surface import canonical_code, single_cell


def test_single_cell_grows_two_ways():
    grown = grow_all(single_cell())
    assert len(grown) == 2
    assert b"F,F,F,1/F,0,F,F" in grown


def test_small_areas():
    fishes = enumerate_by_area(3)
    by_area = [sum(1 for c in fishes.values() if c.cell_count == a) for a in (1, 2, 3)]
    assert by_area == [1, 2, 5]


def test_oracle_matches_grammar_up_to_area_four():
    oracle = set(enumerate_by_area(4))
    grammar = {canonical_code(build(t)) for t in enumerate_terms(5) if t.area <= 4}
    assert oracle == grammar


def test_census_counts_overlaps():
    rows = {row.area: row for row in census(enumerate_by_area(5))}
    assert [rows[a].non_polyomino for a in (1, 2, 3, 4)] == [0, 0, 0, 2]
    assert [rows[a].non_planar for a in (1, 2, 3, 4, 5)] == [0, 0, 0, 0, 1]


def test_object_budget():
    with pytest.raises(BudgetExceededError):
        enumerate_by_area(6, config=Settings(cache=None, object_budget=50))


def test_area_must_be_positive():
    with pytest.raises(PreconditionError):
        enumerate_by_area(0)
