import pytest

from finfish.core.errors import StructuralError
from finfish.fish.surface import (
    ComplexBuilder,
    FishComplex,
    SideKind,
    canonical_code,
    classify,
    fin,
    project,
    single_cell,
    stats,
    tilted,
    trace_boundary,
)


def column() -> FishComplex:
    # two cells, the second glued on the upper-right side of the first
    builder = ComplexBuilder(2)
    builder.glue(0, SideKind.UR, 1, SideKind.LL)
    return builder.freeze(0)


def test_side_kinds_cycle_counterclockwise():
    assert [k.next_ccw for k in SideKind] == [SideKind.LR, SideKind.UR, SideKind.UL, SideKind.LL]
    assert SideKind.LL.partner == SideKind.UR
    assert SideKind.LR.partner == SideKind.UL


def test_single_cell_statistics():
    s = stats(single_cell())
    assert (s.size, s.lsize, s.rsize, s.tails, s.fin, s.area) == (2, 1, 1, 1, 2, 1)
    assert s.fin_word == "LR"
    assert s.branch_points == 0
    assert s.lower_flats == 1


def test_single_cell_boundary_has_four_sides():
    boundary = trace_boundary(single_cell())
    assert [kind for _, kind in boundary] == [SideKind.LL, SideKind.LR, SideKind.UR, SideKind.UL]


def test_column_statistics_and_fin():
    complex_ = column()
    sides, word = fin(complex_)
    assert word == "LRR"
    assert sides[-1] == (1, SideKind.LR)
    s = stats(complex_)
    assert (s.size, s.tails, s.rsize, s.lsize, s.fin) == (3, 1, 2, 1, 3)


def test_projection_uses_diagonal_steps():
    placement = project(column())
    assert placement == {0: (0, 0), 1: (1, 0)}
    assert tilted(placement[1]) == (1, 1)


def test_gluing_rejects_incompatible_sides():
    builder = ComplexBuilder(2)
    with pytest.raises(StructuralError):
        builder.glue(0, SideKind.UR, 1, SideKind.UL)


def test_gluing_rejects_reused_side():
    builder = ComplexBuilder(3)
    builder.glue(0, SideKind.UR, 1, SideKind.LL)
    with pytest.raises(StructuralError):
        builder.glue(0, SideKind.UR, 2, SideKind.LL)


def test_loose_cells_are_not_a_fish():
    builder = ComplexBuilder(2)
    with pytest.raises(StructuralError):
        builder.freeze(0)


def test_canonical_code_round_trip_and_relabelling():
    complex_ = column()
    code = canonical_code(complex_)
    assert code == b"F,F,F,1/F,0,F,F"
    again = FishComplex.from_code(code)
    assert canonical_code(again) == code
    # same fish with the cells numbered the other way round
    builder = ComplexBuilder(2)
    builder.glue(1, SideKind.UR, 0, SideKind.LL)
    assert canonical_code(builder.freeze(1)) == code


def test_json_round_trip():
    complex_ = column()
    again = FishComplex.from_json(complex_.to_json())
    assert canonical_code(again) == canonical_code(complex_)


def test_malformed_code_is_rejected():
    with pytest.raises(StructuralError):
        FishComplex.from_code("F,F,F")


def test_classify_small_fish():
    shape = classify(column())
    assert shape.planar and shape.polyomino


def test_restrict_and_split():
    complex_ = column()
    own, other = complex_.split_at(0, SideKind.UR)
    assert own == {0} and other == {1}
    part, index = complex_.restrict({1})
    assert part.cell_count == 1 and index == {1: 0}
