from collections import Counter

import pytest

from finfish.core.config import Settings
from finfish.core.errors import BudgetExceededError, PreconditionError
from finfish.fish.grammar import (
    build,
    decompose,
    enumerate_terms,
    enumerated_distribution,
    joint_distribution,
    predicted_stats,
    realized_stats,
    terms_of_size,
)
from finfish.fish.surface import canonical_code
from finfish.fish.terms import A, B1, B2, C1, C3
from finfish.formulas.closed_forms import fish_count


def test_terms_by_size_match_closed_form():
    assert [len(terms_of_size(s)) for s in range(2, 8)] == [1, 2, 6, 22, 91, 408]
    for n in range(1, 7):
        assert len(terms_of_size(n + 1)) == fish_count(n)


def test_enumerate_terms_counts_all_sizes():
    assert len(list(enumerate_terms(4))) == 9


def test_enumerate_terms_budget():
    with pytest.raises(BudgetExceededError):
        list(enumerate_terms(6, config=Settings(cache=None, term_budget=10)))


def test_enumerate_terms_stops_before_an_oversized_level():
    seen = []
    with pytest.raises(BudgetExceededError, match="size 6"):
        for term in enumerate_terms(12, config=Settings(cache=None, term_budget=100)):
            seen.append(term)
    # sizes 2..5 fit (31 terms); size 6 would add 91 more
    assert len(seen) == 1 + 2 + 6 + 22


def test_terms_of_size_respects_budget():
    with pytest.raises(BudgetExceededError):
        terms_of_size(9, config=Settings(cache=None, term_budget=1000))


def test_enumerate_terms_rejects_small_bound():
    with pytest.raises(PreconditionError):
        list(enumerate_terms(1))


def test_build_b2_of_single_cell_is_a_column():
    assert canonical_code(build(B2(A))) == b"F,F,F,1/F,0,F,F"


def test_size_four_areas():
    assert sorted(t.area for t in terms_of_size(4)) == [3, 3, 3, 3, 3, 4]
    assert sum(build(t).cell_count for t in terms_of_size(4)) == 19


@pytest.mark.parametrize("size", range(2, 7))
def test_decompose_inverts_build(size):
    for term in terms_of_size(size):
        assert decompose(build(term)) == term


def test_distinct_terms_give_distinct_fish():
    codes = Counter(canonical_code(build(t)) for t in enumerate_terms(6))
    assert max(codes.values()) == 1


@pytest.mark.parametrize("term", [A, B1(A), B2(B1(A)), C1(A, A), C3(A, 1, A), C1(B2(A), C3(A, 1, A))])
def test_predicted_stats_match_realization(term):
    assert predicted_stats(term) == realized_stats(term)
    assert build(term).cell_count == term.area


def test_joint_distribution_matches_enumeration():
    dp = joint_distribution(7)
    assert dp == enumerated_distribution(7)
    assert dp.filter(size=6) == enumerated_distribution(6, realize=True)


def test_joint_distribution_small_rows():
    table = joint_distribution(4)
    assert table[(2, 1, 1, 1, 2)] == 1
    assert table[(3, 1, 1, 2, 3)] == 1
    assert table[(3, 1, 2, 1, 3)] == 1
    # C3(A,1,A) is the only size-4 fish with two tails
    assert table.marginal("size", "tails")[(4, 2)] == 1
    assert table.total() == 9
