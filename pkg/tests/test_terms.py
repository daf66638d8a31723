import pytest

from finfish.core.errors import PreconditionError
from finfish.fish.terms import A, B1, B2, C1, C2, C3, StatVector, parse_term, strip_word


def test_single_cell_term():
    assert A.fin_word == "LR"
    assert A.area == 1
    assert A.stats == StatVector(2, 1, 1, 1, 2)


def test_unary_terms():
    assert B1(A).fin_word == "LLR"
    assert B1(A).stats == StatVector(3, 1, 1, 2, 3)
    assert B2(A).fin_word == "LRR"
    assert B2(A).stats == StatVector(3, 1, 2, 1, 3)
    assert B2(B1(A)).area == 4


def test_binary_terms():
    assert C1(A, A).fin_word == "LRLR"
    assert C1(A, A).stats == StatVector(4, 1, 2, 2, 4)
    assert C3(A, 1, A).fin_word == "LLR"
    assert C3(A, 1, A).stats == StatVector(4, 2, 2, 2, 3)
    assert C3(A, 1, A).area == 3


def test_fin_spread_for_positioned_terms():
    x = B2(B2(A))
    y = B1(A)
    for p, letter in enumerate(x.fin_word[:-1], start=1):
        term = C3(x, p, y) if letter == "L" else C2(x, p, y)
        assert term.stats.fin == p + y.stats.fin
        assert len(term.fin_word) == term.stats.fin


@pytest.mark.parametrize(
    "build",
    [
        lambda: C2(A, 1, A),  # position 1 of "LR" is a left edge
        lambda: C3(A, 2, A),  # position 2 is a right edge
        lambda: C2(B2(A), 3, A),  # the final right edge is never a C2 position
        lambda: C3(A, 0, A),
    ],
)
def test_invalid_positions(build):
    with pytest.raises(PreconditionError):
        build()


def test_strip_word():
    assert strip_word("LR", None) == "LRR"
    assert strip_word("LL", "R") == "LLR"
    assert strip_word("", "L") == ""


@pytest.mark.parametrize("text", ["A", "B1(A)", "C1(B2(A),A)", "C3(A,1,B1(A))", "C2(B2(A),2,A)"])
def test_parse_round_trip(text):
    term = parse_term(text)
    assert term.text == text
    assert parse_term(str(term)) == term


@pytest.mark.parametrize("text", ["", "B1(", "C1(A)", "A A", "D(A)"])
def test_parse_rejects_garbage(text):
    with pytest.raises(PreconditionError):
        parse_term(text)
