"""Grid projections and the raw counters w, c, c_d, c_u, mu, lambda.

A projection picks, for every row, which way the horizontal arc runs from
X to O, and for every column, which way the vertical arc runs from O to X.
Horizontal arcs pass over vertical ones.  All geometry is done on cell
indices; nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import product
from typing import Iterator

from .errors import BadIndex
from .lens_core import Cell, GridDiagram

RIGHT = UP = 1
LEFT = DOWN = -1


@dataclass(frozen=True)
class GridProjection:
    diagram: GridDiagram
    hchoice: tuple[int, ...]
    vchoice: tuple[int, ...]


@dataclass(frozen=True)
class ProjectionCounts:
    w: int
    c: int
    c_d: int
    c_u: int
    mu: int
    lam: int


class _Maps:
    """Row and column lookups of one diagram, built once."""

    __slots__ = ("o_row", "x_row", "o_col", "x_col")

    def __init__(self, d: GridDiagram):
        n = d.n
        self.o_row = {c.y: c for c in d.O}
        self.x_row = {c.y: c for c in d.X}
        self.o_col = {c.x % n: c for c in d.O}
        self.x_col = {c.x % n: c for c in d.X}


def _row_length(d: GridDiagram, m: _Maps, y: int, direction: int) -> int:
    xo, xx = m.o_row[y].x, m.x_row[y].x
    return ((xo - xx) if direction == RIGHT else (xx - xo)) % d.width


def _column_length(d: GridDiagram, m: _Maps, col: int, direction: int) -> int:
    lo, lx = d.level(m.o_col[col]), d.level(m.x_col[col])
    return ((lx - lo) if direction == UP else (lo - lx)) % d.width


def default_projection(d: GridDiagram) -> GridProjection:
    """Shorter arc in every row and column; ties go right / up."""
    m = _Maps(d)
    h = tuple(
        RIGHT if _row_length(d, m, y, RIGHT) <= _row_length(d, m, y, LEFT) else LEFT
        for y in range(d.n)
    )
    v = tuple(
        UP if _column_length(d, m, c, UP) <= _column_length(d, m, c, DOWN) else DOWN
        for c in range(d.n)
    )
    return GridProjection(d, h, v)


def genuine_rows(d: GridDiagram) -> list[int]:
    return [y for y in range(d.n) if d.o_in_row(y) != d.x_in_row(y)]


def genuine_columns(d: GridDiagram) -> list[int]:
    return [c for c in range(d.n) if d.o_in_column(c) != d.x_in_column(c)]


def all_projections(d: GridDiagram) -> Iterator[GridProjection]:
    """Every projection, varying only rows and columns that carry an arc."""
    rows, cols = genuine_rows(d), genuine_columns(d)
    for bits in product((RIGHT, LEFT), repeat=len(rows) + len(cols)):
        h = [RIGHT] * d.n
        v = [UP] * d.n
        for y, b in zip(rows, bits):
            h[y] = b
        for c, b in zip(cols, bits[len(rows):]):
            v[c] = b
        yield GridProjection(d, tuple(h), tuple(v))


def disk_slide(proj: GridProjection, kind: str, index: int) -> GridProjection:
    """Swap the arc of one row (``kind='row'``) or column for the other one."""
    d = proj.diagram
    if kind == "row":
        if index not in genuine_rows(d):
            raise BadIndex(f"row {index} carries no horizontal arc")
        h = list(proj.hchoice)
        h[index] = -h[index]
        return replace(proj, hchoice=tuple(h))
    if kind == "column":
        if index not in genuine_columns(d):
            raise BadIndex(f"column {index} carries no vertical arc")
        v = list(proj.vchoice)
        v[index] = -v[index]
        return replace(proj, vchoice=tuple(v))
    raise BadIndex(f"kind must be 'row' or 'column', got {kind!r}")


def counts(proj: GridProjection) -> ProjectionCounts:
    d = proj.diagram
    n, w = d.n, d.width
    m = _Maps(d)
    lam = mu = writhe = c_d = c_u = 0
    over: dict[Cell, int] = {}

    for y in range(n):
        xo, xx = m.o_row[y].x, m.x_row[y].x
        if xo == xx:
            continue
        h = proj.hchoice[y]
        length = _row_length(d, m, y, h)
        if h == RIGHT:
            lam += (xx + length) // n - xx // n
        else:
            lam -= xx // n - (xx - length) // n
        for i in range(1, length):
            over[Cell((xx + h * i) % w, y)] = h

    for col in range(n):
        o, x = m.o_col[col], m.x_col[col]
        if o == x:
            c_d += 1
            c_u += 1
            continue
        v = proj.vchoice[col]
        h_o, h_x = proj.hchoice[o.y], proj.hchoice[x.y]
        length = _column_length(d, m, col, v)
        lo = d.level(o)
        if v == UP:
            mu += (lo + length) // n - lo // n
        else:
            mu -= lo // n - (lo - length) // n
        for i in range(1, length):
            h = over.get(d.cell_at_level(col, lo + v * i))
            if h is not None:
                writhe += h * v
        # a corner is a cusp when both arcs leave the marking toward the same side
        # (lower-left or upper-right); O: arcs leave along (-h, v), X along (h, -v)
        for h in (h_o, h_x):
            if h == -v:
                if h == RIGHT:
                    c_d += 1
                else:
                    c_u += 1
    return ProjectionCounts(writhe, c_d + c_u, c_d, c_u, mu, lam)


def uniform_projection(d: GridDiagram, h: int = LEFT, v: int = UP) -> GridProjection:
    """Every row runs ``h`` and every column runs ``v``.

    With the defaults this is the projection drawn for the L_n family.
    """
    return GridProjection(d, (h,) * d.n, (v,) * d.n)
