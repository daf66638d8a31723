import pytest

from finfish.core.errors import PreconditionError, StructuralError
from finfish.fish.grammar import build, enumerate_terms
from finfish.fish.oracle import enumerate_by_area
from finfish.fish.surface import canonical_code, classify
from finfish.fish.terms import B2, A
from finfish.render import render


def test_single_cell_is_one_diamond():
    svg = render("F,F,F,F")
    assert svg.startswith("<svg")
    assert svg.count("<polygon") == 1
    assert "×" not in svg


def test_ascii_column():
    code = canonical_code(build(B2(A)))
    assert render(code, "ascii") == ".*\n*\n"


def test_non_planar_fish_has_a_multiplicity_badge():
    fishes = enumerate_by_area(5)
    overlapping = [code for code, c in fishes.items() if not classify(c).planar]
    assert len(overlapping) == 1
    svg = render(overlapping[0])
    assert svg.count("×2") == 1
    assert "2" in render(overlapping[0], "ascii")


def test_fin_is_highlighted():
    term = next(t for t in enumerate_terms(4) if t.text == "C1(A,A)")
    svg = render(canonical_code(build(term)))
    assert svg.count("stroke-width=\"3\"") == len(term.fin_word)


def test_bad_input():
    with pytest.raises(StructuralError):
        render("F,F,x,F")
    with pytest.raises(PreconditionError):
        render("F,F,F,F", "png")
