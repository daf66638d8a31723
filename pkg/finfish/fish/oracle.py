"""Incremental-growth oracle: every fish of bounded area, built cell by cell."""

import logging
from collections import Counter
from typing import Dict, List

from pydantic import BaseModel

from finfish.core.config import Settings, settings as default_settings
from finfish.core.errors import BudgetExceededError, PreconditionError
from finfish.fish.surface import (
    ComplexBuilder,
    FishComplex,
    SideKind,
    canonical_code,
    classify,
    single_cell,
)

logger = logging.getLogger(__name__)


def _attach(complex_: FishComplex, gluings) -> FishComplex:
    builder = ComplexBuilder.from_complex(complex_)
    new = builder.add_cell()
    for kind, cell in gluings:
        builder.glue(new, kind, cell, kind.partner)
    return builder.freeze(complex_.head, check=False)


def grow_all(complex_: FishComplex) -> Dict[bytes, FishComplex]:
    """Every one-cell extension by the three growth rules, keyed by canonical code."""
    grown: List[FishComplex] = []
    for cell in range(complex_.cell_count):
        # rule 1: new lower-left side on a free upper-right side
        if complex_.is_free(cell, SideKind.UR):
            grown.append(_attach(complex_, [(SideKind.LL, cell)]))
        # rule 2: new upper-left side on a free lower-right side
        if complex_.is_free(cell, SideKind.LR):
            grown.append(_attach(complex_, [(SideKind.UL, cell)]))
        # rule 3: fill the notch between the upper-right and lower-right neighbours
        upper = complex_.partner(cell, SideKind.UR)
        lower = complex_.partner(cell, SideKind.LR)
        if upper is None or lower is None:
            continue
        if complex_.is_free(upper, SideKind.LR) and complex_.is_free(lower, SideKind.UR):
            grown.append(_attach(complex_, [(SideKind.UL, upper), (SideKind.LL, lower)]))
    return {canonical_code(g): g for g in grown}


def enumerate_by_area(max_area: int, config: Settings = default_settings) -> Dict[bytes, FishComplex]:
    """Closure of the single cell under growth, up to ``max_area`` cells."""
    if max_area < 1:
        raise PreconditionError(f"max_area must be at least 1, got {max_area}")
    seed = single_cell()
    found: Dict[bytes, FishComplex] = {canonical_code(seed): seed}
    frontier = dict(found)
    for area in range(2, max_area + 1):
        load = 4 * area * len(frontier)
        if load > config.object_budget:
            raise BudgetExceededError(
                f"oracle frontier at area {area} needs {load} sides, budget is {config.object_budget}"
            )
        level: Dict[bytes, FishComplex] = {}
        for complex_ in frontier.values():
            level.update(grow_all(complex_))
        for complex_ in level.values():
            complex_.check()
        found.update(level)
        frontier = level
        logger.info(f"🐟 Area {area}: {len(level)} fish")
    return found


class CensusRow(BaseModel):
    area: int
    fish: int
    non_polyomino: int
    non_planar: int


def census(fishes: Dict[bytes, FishComplex]) -> List[CensusRow]:
    """Per-area counts of all fish, non-polyomino fish and non-planar fish."""
    totals: Counter = Counter()
    non_poly: Counter = Counter()
    non_planar: Counter = Counter()
    for complex_ in fishes.values():
        area = complex_.cell_count
        shape = classify(complex_)
        totals[area] += 1
        non_poly[area] += not shape.polyomino
        non_planar[area] += not shape.planar
    return [
        CensusRow(area=a, fish=totals[a], non_polyomino=non_poly[a], non_planar=non_planar[a])
        for a in sorted(totals)
    ]
