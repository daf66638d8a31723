"""Pictures of fish: 45 degree tilted unit squares as SVG or plain text."""

import logging
from collections import Counter
from typing import Dict, List, Set, Tuple

from finfish.core.errors import PreconditionError, StructuralError
from finfish.fish.surface import FishComplex, SideKind, fin, project, tilted

logger = logging.getLogger(__name__)

CELL = 24
MARGIN = 12

FILL = "#cfe0f5"
FIN_FILL = "#f7c873"
STROKE = "#1f3b5c"
FIN_STROKE = "#c0392b"

# Corners of a diamond centred at (x, y), in tilted units, keyed by side.
_SIDE_ENDS = {
    SideKind.LL: ((-1, 0), (0, -1)),
    SideKind.LR: ((0, -1), (1, 0)),
    SideKind.UR: ((1, 0), (0, 1)),
    SideKind.UL: ((0, 1), (-1, 0)),
}


def parse_code(code: bytes | str) -> FishComplex:
    try:
        return FishComplex.from_code(code)
    except (ValueError, IndexError) as e:
        raise StructuralError(f"cannot parse canonical code {code!r}: {e}") from e


class Picture:
    """Tilted placement of one fish, shared by both output formats."""

    def __init__(self, complex_: FishComplex):
        self.complex = complex_
        placement = project(complex_)
        self.centres: Dict[int, Tuple[int, int]] = {cell: tilted(pos) for cell, pos in placement.items()}
        self.multiplicity = Counter(self.centres.values())
        self.fin_sides, self.fin_word = fin(complex_)
        self.fin_cells: Set[int] = {cell for cell, _ in self.fin_sides}
        xs = [x for x, _ in self.centres.values()]
        ys = [y for _, y in self.centres.values()]
        self.x_range = (min(xs) - 1, max(xs) + 1)
        self.y_range = (min(ys) - 1, max(ys) + 1)

    def _point(self, x: int, y: int) -> Tuple[int, int]:
        # screen y grows downwards
        return (
            MARGIN + (x - self.x_range[0]) * CELL,
            MARGIN + (self.y_range[1] - y) * CELL,
        )

    def svg(self) -> str:
        width = (self.x_range[1] - self.x_range[0]) * CELL + 2 * MARGIN
        height = (self.y_range[1] - self.y_range[0]) * CELL + 2 * MARGIN
        lines = [
            f'<svg width="{width}" height="{height}" viewBox="0 0 {width} {height}" '
            f'fill="none" xmlns="http://www.w3.org/2000/svg">',
            "  <style>",
            "    text {",
            "      font-family: Arial, sans-serif;",
            "    }",
            "  </style>",
        ]
        for cell in sorted(self.centres, key=lambda c: (self.centres[c], c)):
            x, y = self.centres[cell]
            corners = [self._point(x + dx, y + dy) for dx, dy in ((-1, 0), (0, -1), (1, 0), (0, 1))]
            path = " ".join(f"{px},{py}" for px, py in corners)
            fill = FIN_FILL if cell in self.fin_cells else FILL
            lines.append(
                f'  <polygon points="{path}" fill="{fill}" fill-opacity="0.7" stroke="{STROKE}" />'
            )
        for cell, kind in self.fin_sides:
            x, y = self.centres[cell]
            (ax, ay), (bx, by) = _SIDE_ENDS[kind]
            x1, y1 = self._point(x + ax, y + ay)
            x2, y2 = self._point(x + bx, y + by)
            lines.append(
                f'  <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{FIN_STROKE}" stroke-width="3" />'
            )
        for (x, y), count in sorted(self.multiplicity.items()):
            if count < 2:
                continue
            px, py = self._point(x, y)
            lines.append(
                f'  <text x="{px}" y="{py + 4}" text-anchor="middle" font-size="12" fill="#000">×{count}</text>'
            )
        lines.append("</svg>")
        return "\n".join(lines) + "\n"

    def ascii(self) -> str:
        """One character per occupied centre: ``#`` a cell, ``*`` a fin cell, digits for stacked cells."""
        fin_positions = {self.centres[cell] for cell in self.fin_cells}
        rows: List[str] = []
        for y in range(self.y_range[1] - 1, self.y_range[0], -1):
            row = []
            for x in range(self.x_range[0] + 1, self.x_range[1]):
                count = self.multiplicity.get((x, y), 0)
                if count == 0:
                    row.append(".")
                elif count > 1:
                    row.append(str(count) if count < 10 else "+")
                elif (x, y) in fin_positions:
                    row.append("*")
                else:
                    row.append("#")
            rows.append("".join(row).rstrip("."))
        return "\n".join(rows) + "\n"


def render(code: bytes | str, fmt: str = "svg") -> str:
    """Draw the fish with the given canonical code."""
    if fmt not in ("svg", "ascii"):
        raise PreconditionError(f"unknown render format {fmt!r}; use svg or ascii")
    picture = Picture(parse_code(code))
    stacked = sum(1 for count in picture.multiplicity.values() if count > 1)
    if stacked:
        logger.debug(f"🐟 {stacked} positions carry more than one cell")
    return picture.svg() if fmt == "svg" else picture.ascii()
