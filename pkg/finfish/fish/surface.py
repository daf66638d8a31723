"""Fighting fish as surfaces of glued cells.

A cell has four sides. Gluings only ever pair a lower-left side with an
upper-right side, or an upper-left side with a lower-right side, so a side's
partner kind is fixed and a complex only needs to record, for every side,
the index of the neighbouring cell.
"""

import json
import logging
from collections import deque
from dataclasses import dataclass
from enum import IntEnum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from finfish.core.errors import StructuralError

logger = logging.getLogger(__name__)


class SideKind(IntEnum):
    # counterclockwise order around a cell
    LL = 0
    LR = 1
    UR = 2
    UL = 3

    @property
    def next_ccw(self) -> "SideKind":
        return SideKind((self + 1) % 4)

    @property
    def partner(self) -> "SideKind":
        """Kind of the side this one can be glued to (LL-UR, LR-UL)."""
        return SideKind((self + 2) % 4)

    @property
    def is_lower(self) -> bool:
        return self in (SideKind.LL, SideKind.LR)


# Order used by canonical codes and JSON.
CODE_ORDER = (SideKind.UL, SideKind.LL, SideKind.LR, SideKind.UR)

# Diagonal offset of the neighbour across each side.
OFFSETS = {
    SideKind.UR: (1, 0),
    SideKind.LR: (0, 1),
    SideKind.LL: (-1, 0),
    SideKind.UL: (0, -1),
}

Side = Tuple[int, SideKind]
Neighbours = Tuple[Optional[int], Optional[int], Optional[int], Optional[int]]


@dataclass(frozen=True, slots=True)
class FishComplex:
    """Immutable gluing of cells; ``neighbours[c][kind]`` is the cell across that side."""

    neighbours: Tuple[Neighbours, ...]
    head: int

    @property
    def cell_count(self) -> int:
        return len(self.neighbours)

    def partner(self, cell: int, kind: SideKind) -> Optional[int]:
        return self.neighbours[cell][kind]

    def is_free(self, cell: int, kind: SideKind) -> bool:
        return self.neighbours[cell][kind] is None

    def free_sides(self) -> List[Side]:
        return [
            (cell, kind)
            for cell in range(self.cell_count)
            for kind in SideKind
            if self.neighbours[cell][kind] is None
        ]

    def is_final(self, cell: int) -> bool:
        return self.is_free(cell, SideKind.LR) and self.is_free(cell, SideKind.UR)

    # -- validation -------------------------------------------------------

    def check(self) -> "FishComplex":
        """Raise StructuralError unless every fighting-fish invariant holds."""
        n = self.cell_count
        if n == 0:
            raise StructuralError("empty complex")
        for cell, slots in enumerate(self.neighbours):
            if len(slots) != 4:
                raise StructuralError(f"cell {cell} does not have four sides")
            for kind in SideKind:
                other = slots[kind]
                if other is None:
                    continue
                if not 0 <= other < n or other == cell:
                    raise StructuralError(f"side {cell}.{kind.name} glued to invalid cell {other}")
                if self.neighbours[other][kind.partner] != cell:
                    raise StructuralError(
                        f"gluing is not an involution at {cell}.{kind.name}"
                    )
        if len(self._component(self.head)) != n:
            raise StructuralError("complex is not connected")
        heads = [c for c in range(n) if self.is_free(c, SideKind.UL) and self.is_free(c, SideKind.LL)]
        if heads != [self.head]:
            raise StructuralError(f"expected exactly one head at {self.head}, found {heads}")
        free = self.free_sides()
        lower = sum(1 for _, kind in free if kind.is_lower)
        if 2 * lower != len(free):
            raise StructuralError("free lower and free upper side counts differ")
        project(self)
        return self

    def _component(self, start: int, cut: Optional[Tuple[int, int]] = None) -> set:
        seen = {start}
        queue = deque([start])
        while queue:
            cell = queue.popleft()
            for other in self.neighbours[cell]:
                if other is None or other in seen:
                    continue
                if cut is not None and {cell, other} == set(cut):
                    continue
                seen.add(other)
                queue.append(other)
        return seen

    # -- derived complexes --------------------------------------------------

    def restrict(self, cells: Iterable[int]) -> Tuple["FishComplex", Dict[int, int]]:
        """Induced subcomplex on ``cells``; returns it with the old→new index map."""
        kept = sorted(set(cells))
        if not kept:
            raise StructuralError("restriction to an empty set of cells")
        index = {old: new for new, old in enumerate(kept)}
        neighbours = tuple(
            tuple(index.get(other) if other is not None else None for other in self.neighbours[old])
            for old in kept
        )
        heads = [
            c for c, slots in enumerate(neighbours)
            if slots[SideKind.UL] is None and slots[SideKind.LL] is None
        ]
        if len(heads) != 1:
            raise StructuralError(f"restriction has {len(heads)} head candidates")
        return FishComplex(neighbours, heads[0]).check(), index

    def split_at(self, cell: int, kind: SideKind) -> Tuple[set, set]:
        """Cells on each side of the gluing at ``cell.kind`` once it is cut.

        Returns (component of ``cell``, component of its partner). The two
        sets coincide when the side is not a cut edge.
        """
        other = self.partner(cell, kind)
        if other is None:
            raise StructuralError(f"side {cell}.{kind.name} is free")
        return self._component(cell, cut=(cell, other)), self._component(other, cut=(cell, other))

    # -- serialization ------------------------------------------------------

    def canonical_order(self) -> List[int]:
        order = [self.head]
        seen = {self.head}
        position = 0
        while position < len(order):
            cell = order[position]
            position += 1
            for kind in CODE_ORDER:
                other = self.neighbours[cell][kind]
                if other is not None and other not in seen:
                    seen.add(other)
                    order.append(other)
        return order

    def canonical(self) -> "FishComplex":
        """Copy renumbered in breadth-first order from the head."""
        order = self.canonical_order()
        index = {old: new for new, old in enumerate(order)}
        neighbours = tuple(
            tuple(index[o] if o is not None else None for o in self.neighbours[old])
            for old in order
        )
        return FishComplex(neighbours, 0)

    def to_json(self) -> dict:
        canon = self.canonical()
        gluings = []
        for cell, slots in enumerate(canon.neighbours):
            for kind in (SideKind.UR, SideKind.LR):
                other = slots[kind]
                if other is not None:
                    gluings.append([cell, kind.name, other, kind.partner.name])
        return {"cells": canon.cell_count, "head": 0, "gluings": gluings}

    @classmethod
    def from_json(cls, payload: dict | str) -> "FishComplex":
        if isinstance(payload, str):
            payload = json.loads(payload)
        builder = ComplexBuilder(payload["cells"])
        for c1, k1, c2, k2 in payload["gluings"]:
            builder.glue(c1, SideKind[k1], c2, SideKind[k2])
        return builder.freeze(payload.get("head", 0))

    @classmethod
    def from_code(cls, code: bytes | str) -> "FishComplex":
        text = code.decode("ascii") if isinstance(code, bytes) else code
        rows = [row.split(",") for row in text.strip().split("/")]
        builder = ComplexBuilder(len(rows))
        for cell, row in enumerate(rows):
            if len(row) != 4:
                raise StructuralError(f"malformed canonical code at cell {cell}")
            for kind, entry in zip(CODE_ORDER, row):
                if entry == "F":
                    continue
                other = int(entry)
                # each gluing appears twice; record it from its lower-indexed end
                if cell <= other:
                    builder.glue(cell, kind, other, kind.partner)
                elif builder.partner(other, kind.partner) != cell:
                    raise StructuralError(f"canonical code is not symmetric at cell {cell}")
        return builder.freeze(0)


class ComplexBuilder:
    """Mutable scratch space for assembling a complex."""

    def __init__(self, cells: int = 0):
        self._slots: List[List[Optional[int]]] = [[None] * 4 for _ in range(cells)]

    @classmethod
    def from_complex(cls, complex_: FishComplex) -> "ComplexBuilder":
        builder = cls()
        builder._slots = [list(slots) for slots in complex_.neighbours]
        return builder

    def __len__(self) -> int:
        return len(self._slots)

    def add_cell(self) -> int:
        self._slots.append([None] * 4)
        return len(self._slots) - 1

    def merge(self, complex_: FishComplex) -> int:
        """Append a disjoint copy of ``complex_``; returns the index offset."""
        offset = len(self._slots)
        for slots in complex_.neighbours:
            self._slots.append([o + offset if o is not None else None for o in slots])
        return offset

    def partner(self, cell: int, kind: SideKind) -> Optional[int]:
        return self._slots[cell][kind]

    def glue(self, c1: int, k1: SideKind, c2: int, k2: SideKind) -> None:
        if k2 != k1.partner:
            raise StructuralError(f"cannot glue {k1.name} to {k2.name}")
        if c1 == c2:
            raise StructuralError(f"cannot glue cell {c1} to itself")
        if self._slots[c1][k1] is not None or self._slots[c2][k2] is not None:
            raise StructuralError(f"side already glued: {c1}.{k1.name} or {c2}.{k2.name}")
        self._slots[c1][k1] = c2
        self._slots[c2][k2] = c1

    def freeze(self, head: int, check: bool = True) -> FishComplex:
        complex_ = FishComplex(tuple(tuple(s) for s in self._slots), head)
        return complex_.check() if check else complex_


def single_cell() -> FishComplex:
    return FishComplex(((None, None, None, None),), 0)


# -- boundary ---------------------------------------------------------------

def successor(complex_: FishComplex, side: Side) -> Side:
    """Next free side along the boundary, counterclockwise."""
    cell, kind = side
    candidate = (cell, kind.next_ccw)
    for _ in range(4 * complex_.cell_count + 4):
        c, k = candidate
        other = complex_.neighbours[c][k]
        if other is None:
            return candidate
        candidate = (other, k.partner.next_ccw)
    raise StructuralError(f"boundary walk from {cell}.{kind.name} does not terminate")


def trace_boundary(complex_: FishComplex) -> List[Side]:
    """All free sides in boundary order, starting at the head's lower-left side."""
    start = (complex_.head, SideKind.LL)
    if not complex_.is_free(*start):
        raise StructuralError("head lower-left side is glued")
    expected = len(complex_.free_sides())
    boundary = [start]
    side = successor(complex_, start)
    while side != start:
        boundary.append(side)
        if len(boundary) > expected:
            raise StructuralError("boundary walk revisits a side")
        side = successor(complex_, side)
    if len(boundary) != expected:
        raise StructuralError(
            f"boundary has {len(boundary)} sides but complex has {expected} free sides"
        )
    return boundary


def fin(complex_: FishComplex) -> Tuple[List[Side], str]:
    """Fin sides from the nose to the first tail, and the fin word over {L, R}."""
    side = (complex_.head, SideKind.LL)
    sides: List[Side] = []
    for _ in range(4 * complex_.cell_count + 1):
        cell, kind = side
        if not kind.is_lower:
            raise StructuralError(f"fin reaches upper side {cell}.{kind.name}")
        sides.append(side)
        if kind == SideKind.LR and complex_.is_final(cell):
            word = "".join("L" if k == SideKind.LL else "R" for _, k in sides)
            return sides, word
        side = successor(complex_, side)
    raise StructuralError("fin walk never reaches a tail")


# -- statistics ---------------------------------------------------------------

class FishStats(BaseModel):
    size: int
    lsize: int
    rsize: int
    tails: int
    fin: int
    fin_word: str
    area: int
    branch_points: int
    lower_flats: int


def stats(complex_: FishComplex) -> FishStats:
    lsize = rsize = tails = 0
    for cell, slots in enumerate(complex_.neighbours):
        lsize += slots[SideKind.LL] is None
        rsize += slots[SideKind.LR] is None
        tails += slots[SideKind.LR] is None and slots[SideKind.UR] is None
    _, word = fin(complex_)
    size = lsize + rsize
    return FishStats(
        size=size,
        lsize=lsize,
        rsize=rsize,
        tails=tails,
        fin=len(word),
        fin_word=word,
        area=complex_.cell_count,
        branch_points=tails - 1,
        lower_flats=size - tails,
    )


# -- plane projection -----------------------------------------------------------

PlanePlacement = Dict[int, Tuple[int, int]]


def project(complex_: FishComplex) -> PlanePlacement:
    """Diagonal coordinates of every cell, head at the origin."""
    positions: PlanePlacement = {complex_.head: (0, 0)}
    queue = deque([complex_.head])
    while queue:
        cell = queue.popleft()
        p, q = positions[cell]
        for kind in SideKind:
            other = complex_.neighbours[cell][kind]
            if other is None:
                continue
            dp, dq = OFFSETS[kind]
            target = (p + dp, q + dq)
            known = positions.get(other)
            if known is None:
                positions[other] = target
                queue.append(other)
            elif known != target:
                raise StructuralError(
                    f"inconsistent placement of cell {other}: {known} vs {target}"
                )
    return positions


def tilted(position: Tuple[int, int]) -> Tuple[int, int]:
    """Tilted plane coordinates (x, y) of a diagonal position."""
    p, q = position
    return p + q, p - q


class Classification(BaseModel):
    planar: bool
    polyomino: bool


def classify(complex_: FishComplex) -> Classification:
    positions = project(complex_)
    occupant: Dict[Tuple[int, int], int] = {}
    planar = True
    for cell, position in positions.items():
        if position in occupant:
            planar = False
        occupant[position] = cell
    if not planar:
        return Classification(planar=False, polyomino=False)
    for cell, (p, q) in positions.items():
        for kind in (SideKind.UR, SideKind.LR):
            dp, dq = OFFSETS[kind]
            other = occupant.get((p + dp, q + dq))
            if other is not None and complex_.neighbours[cell][kind] != other:
                return Classification(planar=True, polyomino=False)
    return Classification(planar=True, polyomino=True)


# -- canonical code ---------------------------------------------------------------

def canonical_code(complex_: FishComplex) -> bytes:
    """Breadth-first code from the head; equal codes iff isomorphic fish."""
    order = complex_.canonical_order()
    index = {old: new for new, old in enumerate(order)}
    rows = []
    for cell in order:
        entries = []
        for kind in CODE_ORDER:
            other = complex_.neighbours[cell][kind]
            entries.append("F" if other is None else str(index[other]))
        rows.append(",".join(entries))
    return "/".join(rows).encode("ascii")


def fin_cells(complex_: FishComplex, sides: Optional[Sequence[Side]] = None) -> List[int]:
    """Cells carrying a lower-left side of the fin, left to right."""
    if sides is None:
        sides, _ = fin(complex_)
    return [cell for cell, kind in sides if kind == SideKind.LL]
