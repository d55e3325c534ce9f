"""Grid moves as pure diagram-to-diagram transforms."""

from __future__ import annotations

import enum
from typing import NamedTuple

from .errors import (
    BadColumn,
    BadIndex,
    BadSite,
    IllegalCommutation,
    InternalError,
    NotASkeinCrossing,
)
from .lens_core import Cell, GridDiagram


class CommutationClass(enum.Enum):
    ILLEGAL = "Illegal"
    NON_INTERLEAVING = "NonInterleaving"
    INTERLEAVING = "Interleaving"


class SkeinSign(enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"


CORNERS = ("NW", "NE", "SW", "SE")
LEGENDRIAN_CORNERS = ("NW", "SE")
_OPPOSITE = {"NW": "SE", "SE": "NW", "NE": "SW", "SW": "NE"}


class StabilizationType(NamedTuple):
    marking: str  # "X" or "O": the marking doubled along the diagonal
    corner: str  # the corner of the 2x2 block left empty

    @property
    def legendrian(self) -> bool:
        return self.corner in LEGENDRIAN_CORNERS

    def __str__(self) -> str:
        return f"{self.marking}:{self.corner}"


STABILIZATION_TYPES = tuple(StabilizationType(m, c) for m in "XO" for c in CORNERS)


class Site(NamedTuple):
    """A destabilization site: ``corner`` has its row partner one cell away
    horizontally (``hdir``) and its column partner one cell away vertically
    (``vdir``)."""

    corner: Cell
    kind: str
    hdir: int
    vdir: int

    @property
    def type(self) -> StabilizationType:
        ns = "N" if self.vdir > 0 else "S"
        ew = "E" if self.hdir > 0 else "W"
        return StabilizationType("O" if self.kind == "X" else "X", ns + ew)


def _bcy(d: GridDiagram, cell: Cell) -> tuple[int, int, int]:
    b, c = divmod(cell.x, d.n)
    return b, c, cell.y


def _rebuild(d: GridDiagram, n: int, O, X) -> GridDiagram:
    to_cell = lambda b, c, y: Cell(b * n + c, y)
    return GridDiagram(d.lens, n, tuple(to_cell(*t) for t in O), tuple(to_cell(*t) for t in X))


# -- stabilization ------------------------------------------------------------

def stabilize(d: GridDiagram, kind: str, index: int, stype: StabilizationType | str) -> GridDiagram:
    """Stabilize at marking ``kind``/``index`` (index into the sorted list).

    ``stype.marking`` must match ``kind``; the marked cell becomes a 2x2
    block with ``kind`` on one diagonal, the other marking type in the
    corner opposite the empty one.
    """
    if isinstance(stype, str):
        stype = StabilizationType(*stype.split(":"))
    cells = d.O if kind == "O" else d.X
    if kind not in ("O", "X") or not 0 <= index < len(cells):
        raise BadIndex(f"no {kind} marking with index {index}")
    if stype.marking != kind or stype.corner not in CORNERS:
        raise BadIndex(f"stabilization {stype} does not apply to an {kind} marking")
    m = cells[index]
    other = d.X if kind == "O" else d.O
    row_partner = next(c for c in other if c.y == m.y)
    col_partner = next(c for c in other if c.x % d.n == m.x % d.n)
    b0, c0, y0 = _bcy(d, m)

    def shift(cell: Cell) -> tuple[int, int, int]:
        b, c, y = _bcy(d, cell)
        return b, c + (c > c0), y + (y > y0)

    opp = _OPPOSITE[stype.corner]
    block = {
        "SW": (b0, c0, y0), "SE": (b0, c0 + 1, y0),
        "NW": (b0, c0, y0 + 1), "NE": (b0, c0 + 1, y0 + 1),
    }
    same = [block[k] for k in CORNERS if k not in (stype.corner, opp)]
    new_other = [block[opp]]
    free_row = y0 if opp[0] == "N" else y0 + 1
    free_col = c0 if opp[1] == "E" else c0 + 1
    rb, rc, _ = shift(row_partner)
    cb, _, cy = shift(col_partner)
    if row_partner == col_partner:  # grid-number-one component
        new_other.append((rb, free_col, free_row))
    else:
        new_other.append((rb, rc, free_row))
        new_other.append((cb, free_col, cy))
    keep_same = [shift(c) for c in cells if c != m]
    keep_other = [shift(c) for c in other if c not in (row_partner, col_partner)]
    mine = keep_same + same
    theirs = keep_other + new_other
    O, X = (mine, theirs) if kind == "O" else (theirs, mine)
    return _rebuild(d, d.n + 1, O, X)


def find_destabilization_sites(d: GridDiagram) -> list[Site]:
    """All destabilization sites, one per 2x2 block."""
    sites, blocks = [], set()
    if d.n < 2:
        return sites
    for kind, mine, other in (("O", d.O, d.X), ("X", d.X, d.O)):
        row_of = {c.y: c for c in other}
        col_of = {c.x % d.n: c for c in other}
        for m in mine:
            r, c = row_of[m.y], col_of[m.x % d.n]
            if r == m or r == c:
                continue
            for hdir, nb in ((1, d.right(m)), (-1, d.left(m))):
                if r != nb:
                    continue
                for vdir, vb in ((1, d.up(m)), (-1, d.down(m))):
                    if c != vb:
                        continue
                    e = d.right(c) if hdir > 0 else d.left(c)
                    key = frozenset((m, r, c, e))
                    if key not in blocks:
                        blocks.add(key)
                        sites.append(Site(m, kind, hdir, vdir))
    return sites


def destabilize(d: GridDiagram, site: Site) -> GridDiagram:
    m = site.corner
    mine, other = (d.O, d.X) if site.kind == "O" else (d.X, d.O)
    if m not in mine or d.n < 2:
        raise BadSite(f"no {site.kind} marking at {tuple(m)}")
    r = d.right(m) if site.hdir > 0 else d.left(m)
    c = d.up(m) if site.vdir > 0 else d.down(m)
    if r not in other or r.y != m.y or c not in other or c.x % d.n != m.x % d.n or r == c:
        raise BadSite(f"{site} is not a destabilization site")
    e = d.right(c) if site.hdir > 0 else d.left(c)
    _, cm, ym = _bcy(d, m)

    def shift(cell: Cell) -> tuple[int, int, int]:
        b, col, y = _bcy(d, cell)
        return b, col - (col > cm), y - (y > ym)

    new_mine = [shift(x) for x in mine if x != m]
    new_other = [shift(x) for x in other if x not in (r, c)] + [shift(e)]
    O, X = (new_mine, new_other) if site.kind == "O" else (new_other, new_mine)
    return _rebuild(d, d.n - 1, O, X)


# -- commutations -------------------------------------------------------------

def _interleaved(a1: int, a2: int, b1: int, b2: int, size: int) -> bool:
    if a1 == a2 or b1 == b2:
        return False
    lo, span = a1, (a2 - a1) % size
    inside = lambda t: 0 < (t - lo) % size < span
    return inside(b1) != inside(b2)


def _check_pair(d: GridDiagram, c: int) -> int:
    if d.n < 2 or not 0 <= c < d.n:
        raise BadColumn(f"no adjacent pair at index {c} for grid number {d.n}")
    return (c + 1) % d.n


def classify_column_commutation(d: GridDiagram, c: int) -> CommutationClass:
    c1 = _check_pair(d, c)
    o0, x0 = d.o_in_column(c), d.x_in_column(c)
    o1, x1 = d.o_in_column(c1), d.x_in_column(c1)
    # column c1 markings are placed at the level of the cell just left of them
    lv = [d.level(o0), d.level(x0), d.level(d.left(o1)), d.level(d.left(x1))]
    if set(lv[:2]) & set(lv[2:]):  # two markings in one segment of the annulus
        return CommutationClass.ILLEGAL
    if _interleaved(*lv, d.width):
        return CommutationClass.INTERLEAVING
    return CommutationClass.NON_INTERLEAVING


def classify_row_commutation(d: GridDiagram, r: int) -> CommutationClass:
    r1 = _check_pair(d, r)
    m0 = (d.o_in_row(r), d.x_in_row(r))
    m1 = (d.o_in_row(r1), d.x_in_row(r1))
    pos = [m0[0].x, m0[1].x, d.down(m1[0]).x, d.down(m1[1]).x]
    if set(pos[:2]) & set(pos[2:]):
        return CommutationClass.ILLEGAL
    if _interleaved(*pos, d.width):
        return CommutationClass.INTERLEAVING
    return CommutationClass.NON_INTERLEAVING


def _swap_columns(d: GridDiagram, c: int, which=("O", "X")) -> GridDiagram:
    c1 = (c + 1) % d.n
    w = d.width

    def move(cell: Cell, kind: str) -> Cell:
        if kind not in which:
            return cell
        col = cell.x % d.n
        if col == c:
            return Cell((cell.x + 1) % w, cell.y)
        if col == c1:
            return Cell((cell.x - 1) % w, cell.y)
        return cell

    return GridDiagram(
        d.lens, d.n,
        tuple(move(o, "O") for o in d.O),
        tuple(move(x, "X") for x in d.X),
    )


def commute_columns(d: GridDiagram, c: int) -> GridDiagram:
    """Exchange column annuli c and c+1 (mod n), keeping every marking's row."""
    if classify_column_commutation(d, c) is CommutationClass.ILLEGAL:
        raise IllegalCommutation(f"columns {c} and {(c + 1) % d.n} have adjacent markings")
    return _swap_columns(d, c)


def commute_rows(d: GridDiagram, r: int) -> GridDiagram:
    if classify_row_commutation(d, r) is CommutationClass.ILLEGAL:
        raise IllegalCommutation(f"rows {r} and {(r + 1) % d.n} have adjacent markings")
    r1 = (r + 1) % d.n

    def move(cell: Cell) -> Cell:
        if cell.y == r:
            return d.up(cell)
        if cell.y == r1:
            return d.down(cell)
        return cell

    return GridDiagram(d.lens, d.n, tuple(map(move, d.O)), tuple(map(move, d.X)))


# -- skein crossings ----------------------------------------------------------

def resolve_skein(d: GridDiagram, c: int) -> GridDiagram:
    """Oriented resolution: swap the two X markings between columns c, c+1."""
    if classify_column_commutation(d, c) is not CommutationClass.INTERLEAVING:
        raise NotASkeinCrossing(f"columns {c}, {(c + 1) % d.n} are not interleaving")
    return _swap_columns(d, c, which=("X",))


def resolve_skein_by_o(d: GridDiagram, c: int) -> GridDiagram:
    if classify_column_commutation(d, c) is not CommutationClass.INTERLEAVING:
        raise NotASkeinCrossing(f"columns {c}, {(c + 1) % d.n} are not interleaving")
    return _swap_columns(d, c, which=("O",))


def skein_sign(d: GridDiagram, c: int) -> SkeinSign:
    """Positive iff the crossing change lowers tb_Q by exactly 2."""
    from .invariants import tb_q

    if classify_column_commutation(d, c) is not CommutationClass.INTERLEAVING:
        raise NotASkeinCrossing(f"columns {c}, {(c + 1) % d.n} are not interleaving")
    diff = tb_q(d) - tb_q(_swap_columns(d, c))
    if diff == 2:
        return SkeinSign.POSITIVE
    if diff == -2:
        return SkeinSign.NEGATIVE
    raise InternalError(f"crossing change moved tb_Q by {diff}, expected +-2")
