import pytest

from finfish.core.config import Settings
from finfish.core.errors import BudgetExceededError, PreconditionError
from finfish.data.tables import TREE_FIELDS, JointTable
from finfish.trees.ternary import (
    CORE,
    LEAF,
    _TreeCounter,
    abscissas,
    enumerate_trees,
    from_text,
    is_j_positive,
    j_positive_counts,
    joint_distribution_trees,
    node_count,
    to_text,
    tree_stats,
    tree_table_by_enumeration,
)


def test_text_round_trip():
    text = "((. . .) . (. . .))"
    tree = from_text(text)
    assert to_text(tree) == text
    assert node_count(tree) == 3
    assert from_text(".") is None


def test_bad_tree_text():
    with pytest.raises(PreconditionError):
        from_text("(. .)")


def test_leaf_statistics():
    s = tree_stats(LEAF)
    assert (s.nodes, s.core, s.right_branches, s.even, s.odd, s.non_root_even) == (1, 1, 0, 1, 0, 0)


def test_right_child_leaves_the_core():
    tree = from_text("(. . (. . .))")
    s = tree_stats(tree)
    assert (s.nodes, s.core, s.right_branches, s.even, s.odd) == (2, 1, 1, 1, 1)
    assert not is_j_positive(tree, 0)
    assert is_j_positive(tree, 1)


def test_left_ternary_trees_are_counted_by_fish():
    assert j_positive_counts(0, 5) == [1, 1, 2, 6, 22, 91]


def test_large_j_gives_all_ternary_trees():
    assert j_positive_counts(6, 5) == [1, 1, 3, 12, 55, 273]


def test_enumeration_is_j_positive():
    trees = list(enumerate_trees(1, 4))
    assert all(is_j_positive(t, 1) for t in trees)
    assert len(trees) == sum(j_positive_counts(1, 4)[1:])


def test_dp_matches_enumeration():
    assert joint_distribution_trees(6) == tree_table_by_enumeration(6)


def test_negative_j_is_rejected():
    with pytest.raises(PreconditionError):
        list(enumerate_trees(-1, 3))


def test_root_left_right_chain_is_zero_positive():
    tree = from_text("((. . (. . .)) . .)")
    assert abscissas(tree) == [0, 1, 0]
    assert is_j_positive(tree, 0)


@pytest.mark.parametrize("j", range(5))
def test_dp_matches_brute_force_for_small_j(j):
    brute = JointTable(TREE_FIELDS)
    for tree in enumerate_trees(j, 6):
        brute.add(tree_stats(tree).key)
    assert joint_distribution_trees(6, j) == brute


def test_tree_enumeration_stops_before_an_oversized_level():
    seen = []
    with pytest.raises(BudgetExceededError, match="4 nodes"):
        for tree in enumerate_trees(0, 8, config=Settings(cache=None, term_budget=10)):
            seen.append(tree)
    # 1 + 2 + 6 trees fit; 22 more at 4 nodes would not
    assert len(seen) == 9


def test_counter_memo_is_per_instance():
    counter = _TreeCounter(0, 4)
    counter.count(4, 0, CORE)
    assert counter.memo
    assert _TreeCounter(0, 4).memo == {}
