"""Executable wasp-waist grammar: build, decompose, enumerate and count."""

import logging
from collections import Counter
from typing import Dict, Iterator, List, Sequence, Tuple

from finfish.core.config import Settings, settings as default_settings
from finfish.core.errors import BudgetExceededError, PreconditionError, StructuralError
from finfish.data.tables import FISH_FIELDS, JointTable
from finfish.fish.surface import (
    ComplexBuilder,
    FishComplex,
    Side,
    SideKind,
    fin,
    fin_cells,
    single_cell,
    stats,
)
from finfish.fish.terms import A, B1, B2, C1, C2, C3, FishTerm, StatVector
from finfish.formulas.closed_forms import fish_count

logger = logging.getLogger(__name__)


# -- build ------------------------------------------------------------------

def _strip(builder: ComplexBuilder, sides: Sequence[Side], count: int) -> List[int]:
    """Lay a strip of new cells under the left edges among the first ``count`` fin sides."""
    strip: List[int] = []
    for k in range(count):
        cell, kind = sides[k]
        if kind != SideKind.LL:
            continue
        new = builder.add_cell()
        builder.glue(new, SideKind.UR, cell, SideKind.LL)
        if strip:
            prev_cell, prev_kind = sides[k - 1]
            if prev_kind == SideKind.LL:
                builder.glue(new, SideKind.UL, strip[-1], SideKind.LR)
            else:
                builder.glue(new, SideKind.UL, prev_cell, SideKind.LR)
        strip.append(new)
    return strip


def build(term: FishTerm) -> FishComplex:
    """Realize a term as a glued-cell complex."""
    if term.kind == "A":
        return single_cell()
    first = build(term.left)
    builder = ComplexBuilder.from_complex(first)
    if term.kind == "B1":
        new = builder.add_cell()
        builder.glue(new, SideKind.LR, first.head, SideKind.UL)
        return builder.freeze(new)

    sides, _ = fin(first)
    if term.kind == "B2":
        strip = _strip(builder, sides, len(sides))
        return builder.freeze(strip[0])

    second = build(term.right)
    head2 = second.head + builder.merge(second)
    if term.kind == "C1":
        strip = _strip(builder, sides, len(sides))
        cell, _ = sides[-1]
        builder.glue(head2, SideKind.UL, cell, SideKind.LR)
    elif term.kind == "C2":
        strip = _strip(builder, sides, term.position - 1)
        cell, _ = sides[term.position - 1]
        builder.glue(head2, SideKind.UL, cell, SideKind.LR)
    else:
        strip = _strip(builder, sides, term.position)
        builder.glue(head2, SideKind.UL, strip[-1], SideKind.LR)
    return builder.freeze(strip[0])


# -- decompose ----------------------------------------------------------------

def _fin_index(complex_: FishComplex, side: Side) -> int:
    sides, _ = fin(complex_)
    try:
        return sides.index(side) + 1
    except ValueError:
        raise StructuralError(
            f"side {side[0]}.{side[1].name} is not on the fin of the first component"
        ) from None


def decompose(complex_: FishComplex, validate: bool = True) -> FishTerm:
    """Recover the unique term whose realization is ``complex_``."""
    if validate:
        complex_.check()
    if complex_.cell_count == 1:
        return A

    candidates = fin_cells(complex_)
    removable = [candidates[0]]
    cut_cell = None
    for cell in candidates[1:]:
        if complex_.is_free(cell, SideKind.UL):
            raise StructuralError(f"fin cell {cell} has two free left sides")
        own, other = complex_.split_at(cell, SideKind.UL)
        if cell in other:
            removable.append(cell)
        else:
            cut_cell = cell
            break

    everything = set(range(complex_.cell_count))
    if cut_cell is None:
        rest, _ = complex_.restrict(everything - set(removable))
        return B2(decompose(rest, validate=False))

    attach = complex_.partner(cut_cell, SideKind.UL)
    second_cells, _ = complex_.split_at(cut_cell, SideKind.UL)
    first_cells = everything - second_cells - set(removable)
    second, _ = complex_.restrict(second_cells)
    if not first_cells:
        if len(removable) != 1:
            raise StructuralError(f"B1 case with {len(removable)} removable cells")
        return B1(decompose(second, validate=False))

    first, index = complex_.restrict(first_cells)
    t1 = decompose(first, validate=False)
    t2 = decompose(second, validate=False)
    if attach in removable:
        # the attaching strip cell sits under a left fin edge of the first component
        above = complex_.partner(attach, SideKind.UR)
        p = _fin_index(first, (index[above], SideKind.LL))
        return C3(t1, p, t2)
    p = _fin_index(first, (index[attach], SideKind.LR))
    if p == len(t1.fin_word):
        return C1(t1, t2)
    return C2(t1, p, t2)


# -- enumeration ----------------------------------------------------------------

def _level(size: int, levels: Dict[int, Tuple[FishTerm, ...]]) -> Tuple[FishTerm, ...]:
    """Terms of exactly ``size`` combined from the smaller levels already in ``levels``."""
    if size == 2:
        return (A,)
    out: List[FishTerm] = []
    for x in levels[size - 1]:
        out.append(B1(x))
        out.append(B2(x))
    for s1 in range(2, size - 1):
        lefts = levels[s1]
        rights = levels[size - s1]
        for x in lefts:
            word = x.fin_word
            for y in rights:
                out.append(C1(x, y))
                for p in range(1, len(word)):
                    out.append(C3(x, p, y) if word[p - 1] == "L" else C2(x, p, y))
    return tuple(out)


def _levels(max_size: int, config: Settings) -> Iterator[Tuple[int, Tuple[FishTerm, ...]]]:
    levels: Dict[int, Tuple[FishTerm, ...]] = {}
    produced = 0
    for size in range(2, max_size + 1):
        expected = fish_count(size - 1)
        if produced + expected > config.term_budget:
            raise BudgetExceededError(
                f"term enumeration would pass {config.term_budget} terms at size {size} "
                f"({produced} built, {expected} more needed)"
            )
        levels[size] = _level(size, levels)
        produced += len(levels[size])
        logger.debug(f"size {size}: {len(levels[size])} terms")
        yield size, levels[size]


def terms_of_size(size: int, config: Settings = default_settings) -> Tuple[FishTerm, ...]:
    """Every valid term of exactly ``size`` free lower sides."""
    level: Tuple[FishTerm, ...] = ()
    for _, level in _levels(size, config):
        pass
    return level


def enumerate_terms(max_size: int, config: Settings = default_settings) -> Iterator[FishTerm]:
    """Every valid term with size at most ``max_size``, by increasing size.

    Raises BudgetExceededError before building a level that would take the
    running total past ``config.term_budget``.
    """
    if max_size < 2:
        raise PreconditionError(f"max_size must be at least 2, got {max_size}")
    for _, level in _levels(max_size, config):
        yield from level


def predicted_stats(term: FishTerm) -> StatVector:
    return term.stats


def realized_stats(term: FishTerm) -> StatVector:
    s = stats(build(term))
    return StatVector(s.size, s.tails, s.rsize, s.lsize, s.fin)


# -- counting DP ----------------------------------------------------------------

def joint_distribution(max_size: int) -> JointTable:
    """Exact (size, tails, rsize, lsize, fin) counts by dynamic programming on the grammar."""
    if max_size < 2:
        raise PreconditionError(f"max_size must be at least 2, got {max_size}")
    by_size: dict[int, Counter] = {2: Counter({(2, 1, 1, 1, 2): 1})}
    for size in range(3, max_size + 1):
        level: Counter = Counter()
        for (s, h, r, l, f), count in by_size[size - 1].items():
            level[(s + 1, h, r, l + 1, f + 1)] += count
            level[(s + 1, h, r + 1, l, f + 1)] += count
        for s1 in range(2, size - 1):
            for (_, h1, r1, l1, f1), c1 in by_size[s1].items():
                for (_, h2, r2, l2, f2), c2 in by_size[size - s1].items():
                    weight = c1 * c2
                    level[(size, h1 + h2 - 1, r1 + r2, l1 + l2, f1 + f2)] += weight
                    for m in range(1, f1):
                        level[(size, h1 + h2, r1 + r2, l1 + l2, f2 + m)] += weight
        by_size[size] = level
        logger.debug(f"size {size}: {sum(level.values())} fish over {len(level)} statistic tuples")
    table = JointTable(FISH_FIELDS)
    for level in by_size.values():
        table.counts.update(level)
    return table


def enumerated_distribution(max_size: int, realize: bool = False, config: Settings = default_settings) -> JointTable:
    """The same table aggregated term by term, optionally from realized complexes."""
    table = JointTable(FISH_FIELDS)
    for term in enumerate_terms(max_size, config=config):
        table.add(realized_stats(term) if realize else term.stats)
    return table
