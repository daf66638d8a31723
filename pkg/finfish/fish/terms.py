"""Wasp-waist terms and their statistics, computed without building a complex.

A term is one of ``A``, ``B1(x)``, ``B2(x)``, ``C1(x,y)``, ``C2(x,p,y)`` or
``C3(x,p,y)``, where ``p`` is a 1-based index into the fin of ``x``. The fin
word of a composite term is obtained from the fin words of its parts by the
strip rule in ``strip_word``.
"""

import re
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional

from finfish.core.errors import PreconditionError

KINDS = ("A", "B1", "B2", "C1", "C2", "C3")


class StatVector(NamedTuple):
    size: int
    tails: int
    rsize: int
    lsize: int
    fin: int


def strip_word(prefix: str, follower: Optional[str]) -> str:
    """Fin word left below a strip of new cells laid under ``prefix``.

    ``follower`` is the fin letter right after the prefix, or None when the
    prefix is the whole fin.
    """
    out = []
    for i, letter in enumerate(prefix):
        nxt = prefix[i + 1] if i + 1 < len(prefix) else follower
        if letter == "L":
            out.append("L")
        if nxt != "L":
            out.append("R")
    return "".join(out)


@dataclass(frozen=True)
class FishTerm:
    kind: str
    left: Optional["FishTerm"] = None
    position: Optional[int] = None
    right: Optional["FishTerm"] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown term kind {self.kind!r}")
        unary = self.kind in ("B1", "B2")
        binary = self.kind.startswith("C")
        if (self.left is None) == (unary or binary):
            raise PreconditionError(f"{self.kind} needs a first subterm")
        if (self.right is None) == binary:
            raise PreconditionError(f"{self.kind} takes a second subterm only for C cases")
        positioned = self.kind in ("C2", "C3")
        if (self.position is None) == positioned:
            raise PreconditionError(f"{self.kind} position mismatch")
        if positioned:
            word = self.left.fin_word
            p = self.position
            if not 1 <= p <= len(word):
                raise PreconditionError(f"position {p} outside fin of length {len(word)}")
            if self.kind == "C2" and (word[p - 1] != "R" or p == len(word)):
                raise PreconditionError(f"C2 needs a non-final right fin edge, got {p} in {word}")
            if self.kind == "C3" and word[p - 1] != "L":
                raise PreconditionError(f"C3 needs a left fin edge, got {p} in {word}")

    def __str__(self) -> str:
        return self.text

    @cached_property
    def text(self) -> str:
        if self.kind == "A":
            return "A"
        if self.kind in ("B1", "B2"):
            return f"{self.kind}({self.left.text})"
        if self.kind == "C1":
            return f"C1({self.left.text},{self.right.text})"
        return f"{self.kind}({self.left.text},{self.position},{self.right.text})"

    @cached_property
    def fin_word(self) -> str:
        if self.kind == "A":
            return "LR"
        w1 = self.left.fin_word
        if self.kind == "B1":
            return "L" + w1
        if self.kind == "B2":
            return strip_word(w1, None)
        w2 = self.right.fin_word
        p = self.position
        if self.kind == "C1":
            return strip_word(w1, None)[:-1] + w2
        if self.kind == "C2":
            return strip_word(w1[: p - 1], "R") + w2
        return strip_word(w1[: p - 1], "L") + "L" + w2

    @cached_property
    def area(self) -> int:
        if self.kind == "A":
            return 1
        a1 = self.left.area
        w1 = self.left.fin_word
        if self.kind == "B1":
            return a1 + 1
        if self.kind == "B2":
            return a1 + w1.count("L")
        a2 = self.right.area
        if self.kind == "C1":
            return a1 + a2 + w1.count("L")
        if self.kind == "C2":
            return a1 + a2 + w1[: self.position - 1].count("L")
        return a1 + a2 + w1[: self.position].count("L")

    @cached_property
    def stats(self) -> StatVector:
        if self.kind == "A":
            return StatVector(2, 1, 1, 1, 2)
        s1 = self.left.stats
        if self.kind == "B1":
            return StatVector(s1.size + 1, s1.tails, s1.rsize, s1.lsize + 1, s1.fin + 1)
        if self.kind == "B2":
            return StatVector(s1.size + 1, s1.tails, s1.rsize + 1, s1.lsize, s1.fin + 1)
        s2 = self.right.stats
        size = s1.size + s2.size
        rsize = s1.rsize + s2.rsize
        lsize = s1.lsize + s2.lsize
        if self.kind == "C1":
            return StatVector(size, s1.tails + s2.tails - 1, rsize, lsize, s1.fin + s2.fin)
        return StatVector(size, s1.tails + s2.tails, rsize, lsize, self.position + s2.fin)

    @property
    def size(self) -> int:
        return self.stats.size


A = FishTerm("A")


def B1(x: FishTerm) -> FishTerm:
    return FishTerm("B1", x)


def B2(x: FishTerm) -> FishTerm:
    return FishTerm("B2", x)


def C1(x: FishTerm, y: FishTerm) -> FishTerm:
    return FishTerm("C1", x, None, y)


def C2(x: FishTerm, p: int, y: FishTerm) -> FishTerm:
    return FishTerm("C2", x, p, y)


def C3(x: FishTerm, p: int, y: FishTerm) -> FishTerm:
    return FishTerm("C3", x, p, y)


_TOKEN = re.compile(r"\s*(A|B1|B2|C1|C2|C3|\d+|[(),])")


def parse_term(text: str) -> FishTerm:
    """Inverse of ``str(term)``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise PreconditionError(f"unexpected character at {pos} in {text!r}")
        tokens.append(match.group(1))
        pos = match.end()
    term, used = _parse(tokens, 0)
    if used != len(tokens):
        raise PreconditionError(f"trailing input in term {text!r}")
    return term


def _expect(tokens, i, token):
    if i >= len(tokens) or tokens[i] != token:
        raise PreconditionError(f"expected {token!r} at token {i}")
    return i + 1


def _parse(tokens, i):
    if i >= len(tokens):
        raise PreconditionError("unexpected end of term")
    head = tokens[i]
    if head == "A":
        return A, i + 1
    if head not in KINDS:
        raise PreconditionError(f"unexpected token {head!r}")
    i = _expect(tokens, i + 1, "(")
    left, i = _parse(tokens, i)
    if head in ("B1", "B2"):
        return FishTerm(head, left), _expect(tokens, i, ")")
    i = _expect(tokens, i, ",")
    position = None
    if head in ("C2", "C3"):
        if i >= len(tokens) or not tokens[i].isdigit():
            raise PreconditionError(f"{head} needs a fin position")
        position = int(tokens[i])
        i = _expect(tokens, i + 1, ",")
    right, i = _parse(tokens, i)
    return FishTerm(head, left, position, right), _expect(tokens, i, ")")
