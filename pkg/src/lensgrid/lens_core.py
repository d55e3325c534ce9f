"""Toroidal grid diagrams for links in the lens space L(p, q).

Diagrams live in the *straightened* domain: ``n`` rows and ``p*n`` cell
columns.  Cell ``(x, y)`` has ``0 <= x < p*n`` and ``0 <= y < n``.  The
left and right edges are glued directly; leaving the top edge above cell
``x`` re-enters the bottom edge above cell ``x - q*n``.  Two markings share
a column annulus iff their ``x`` coordinates agree mod ``n``.

Within a column annulus every cell has a *level* in ``[0, p*n)``: moving
up one cell always adds one to the level, including across the top/bottom
gluing.  Levels are what the vertical arcs of a grid projection run along.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator, NamedTuple, Sequence

from .errors import (
    BadLensParams,
    ColumnViolation,
    EmptyIndex,
    IllegalCoincidence,
    InvalidDiagram,
    RowViolation,
)


@dataclass(frozen=True, order=True)
class LensParams:
    p: int
    q: int

    def check(self) -> None:
        p, q = self.p, self.q
        if p < 1 or not 0 <= q < p and not (p == 1 and q == 0):
            raise BadLensParams(f"need p >= 1 and 0 <= q < p, got L({p},{q})")
        if math.gcd(p, q) != 1:
            raise BadLensParams(f"gcd(p, q) must be 1, got L({p},{q})")

    @cached_property
    def q_inverse(self) -> int:
        if self.p == 1:
            return 0
        return pow(self.q, -1, self.p)

    def __str__(self) -> str:
        return f"L({self.p},{self.q})"


S3 = LensParams(1, 0)


class Cell(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class GridDiagram:
    """O and X markings on an ``n`` x ``p*n`` straightened grid.

    Marking lists are stored sorted; labels carry no meaning.
    Construction normalizes coordinates but does not validate; call
    :func:`validate` on untrusted input.
    """

    lens: LensParams
    n: int
    O: tuple[Cell, ...]
    X: tuple[Cell, ...]

    def __post_init__(self):
        w = self.lens.p * self.n
        norm = lambda cells: tuple(sorted(Cell(x % w, y % self.n) for x, y in cells))
        if self.n >= 1:
            object.__setattr__(self, "O", norm(self.O))
            object.__setattr__(self, "X", norm(self.X))

    # -- geometry helpers -------------------------------------------------
    @property
    def p(self) -> int:
        return self.lens.p

    @property
    def q(self) -> int:
        return self.lens.q

    @property
    def width(self) -> int:
        return self.lens.p * self.n

    def column(self, cell: Cell) -> int:
        return cell.x % self.n

    def level(self, cell: Cell) -> int:
        """Position of ``cell`` along its column annulus."""
        k = (-(cell.x // self.n) * self.lens.q_inverse) % self.lens.p
        return k * self.n + cell.y

    def cell_at_level(self, column: int, level: int) -> Cell:
        level %= self.width
        k, y = divmod(level, self.n)
        b = (-k * self.lens.q) % self.lens.p
        return Cell(b * self.n + column, y)

    def up(self, cell: Cell) -> Cell:
        if cell.y < self.n - 1:
            return Cell(cell.x, cell.y + 1)
        return Cell((cell.x - self.lens.q * self.n) % self.width, 0)

    def down(self, cell: Cell) -> Cell:
        if cell.y > 0:
            return Cell(cell.x, cell.y - 1)
        return Cell((cell.x + self.lens.q * self.n) % self.width, self.n - 1)

    def right(self, cell: Cell) -> Cell:
        return Cell((cell.x + 1) % self.width, cell.y)

    def left(self, cell: Cell) -> Cell:
        return Cell((cell.x - 1) % self.width, cell.y)

    # -- marking lookups ----------------------------------------------------
    def o_in_row(self, y: int) -> Cell:
        return next(c for c in self.O if c.y == y)

    def x_in_row(self, y: int) -> Cell:
        return next(c for c in self.X if c.y == y)

    def o_in_column(self, col: int) -> Cell:
        return next(c for c in self.O if c.x % self.n == col)

    def x_in_column(self, col: int) -> Cell:
        return next(c for c in self.X if c.x % self.n == col)

    def coincident(self) -> set[Cell]:
        return set(self.O) & set(self.X)

    def key(self) -> tuple:
        return (self.O, self.X)

    def __str__(self) -> str:
        return f"GridDiagram({self.lens}, n={self.n}, O={list(self.O)}, X={list(self.X)})"


# -- validation -------------------------------------------------------------

def violation(d: GridDiagram) -> InvalidDiagram | None:
    """Return the first violated invariant of ``d``, or None if valid."""
    try:
        d.lens.check()
    except BadLensParams as exc:
        return exc
    n = d.n
    if n < 1:
        return RowViolation(f"grid number must be >= 1, got {n}")
    if len(d.O) != n or len(d.X) != n:
        return RowViolation(f"expected {n} O and {n} X markings, got {len(d.O)} and {len(d.X)}")
    for z in sorted(d.coincident()):
        others = [c for c in d.O + d.X if c != z and (c.y == z.y or c.x % n == z.x % n)]
        if others:
            return IllegalCoincidence(f"O and X share cell {tuple(z)} but are not a lone component")
    for kind, cells in (("O", d.O), ("X", d.X)):
        rows = [c.y for c in cells]
        for y in range(n):
            if rows.count(y) != 1:
                idx = [i for i, r in enumerate(rows) if r == y]
                return RowViolation(f"row {y} holds {rows.count(y)} {kind} markings (indices {idx})")
        cols = [c.x % n for c in cells]
        for col in range(n):
            if cols.count(col) != 1:
                idx = [i for i, r in enumerate(cols) if r == col]
                return ColumnViolation(
                    f"column {col} holds {cols.count(col)} {kind} markings (indices {idx})"
                )
    return None


def validate(d: GridDiagram) -> GridDiagram:
    err = violation(d)
    if err is not None:
        raise err
    return d


# -- components -------------------------------------------------------------

@dataclass(frozen=True)
class Component:
    O: tuple[Cell, ...]
    X: tuple[Cell, ...]
    cls: int

    @property
    def grid_number(self) -> int:
        return len(self.O)

    @property
    def is_split_unknot(self) -> bool:
        return len(self.O) == 1 and self.O[0] == self.X[0]


def column_wraps(d: GridDiagram, col: int) -> int:
    """Top-edge crossings of the upward vertical arc from O to X in ``col``."""
    o, x = d.o_in_column(col), d.x_in_column(col)
    lo = d.level(o)
    dist = (d.level(x) - lo) % d.width
    return (lo + dist) // d.n - lo // d.n


def components(d: GridDiagram) -> list[Component]:
    """Trace X -> row O -> column X cycles.  Order follows the sorted X list."""
    n = d.n
    o_by_row = {c.y: c for c in d.O}
    x_by_col = {c.x % n: c for c in d.X}
    seen: set[Cell] = set()
    comps = []
    for start in d.X:
        if start in seen:
            continue
        os_, xs = [], []
        xc = start
        while xc not in seen:
            seen.add(xc)
            xs.append(xc)
            oc = o_by_row[xc.y]
            os_.append(oc)
            xc = x_by_col[oc.x % n]
        wraps = sum(column_wraps(d, o.x % n) for o in os_)
        cls = wraps % d.p
        comps.append(Component(tuple(os_), tuple(xs), cls))
    return comps


# -- translations and canonical form ----------------------------------------

def translate(d: GridDiagram, dx: int, dy: int) -> GridDiagram:
    """Shift every marking right by ``dx`` and up by ``dy`` cells."""
    def move(c: Cell) -> Cell:
        for _ in range(dy % d.n):
            c = d.up(c)
        return Cell((c.x + dx) % d.width, c.y)

    return GridDiagram(d.lens, d.n, tuple(map(move, d.O)), tuple(map(move, d.X)))


def canonical_key(d: GridDiagram) -> tuple:
    """Lexicographically least row encoding over all translates of ``d``.

    A translate is encoded as ``(O x by row, X x by row)``.  The least one
    always has an O at (0, 0), so only the n translations taking some O to
    the origin are compared.
    """
    n, w, qn = d.n, d.width, d.lens.q * d.n
    ox = [0] * n
    xx = [0] * n
    for c in d.O:
        ox[c.y] = c.x
    for c in d.X:
        xx[c.y] = c.x
    best = None
    for ya in range(n):
        shift = -ox[ya]
        rows = list(range(ya, n)) + list(range(ya))
        wrap = [0] * (n - ya) + [-qn] * ya  # wrapping below row 0 adds q*n
        cand = (
            tuple((ox[y] - s + shift) % w for y, s in zip(rows, wrap)),
            tuple((xx[y] - s + shift) % w for y, s in zip(rows, wrap)),
        )
        if best is None or cand < best:
            best = cand
    return (d.lens, n) + best


def from_key(key: tuple) -> GridDiagram:
    lens, n, ox, xx = key
    return GridDiagram(
        lens, n,
        tuple(Cell(x, y) for y, x in enumerate(ox)),
        tuple(Cell(x, y) for y, x in enumerate(xx)),
    )


def canonical_form(d: GridDiagram) -> GridDiagram:
    """The translate of ``d`` with the least row encoding."""
    return from_key(canonical_key(d))


# -- trivial links ------------------------------------------------------------

@dataclass(frozen=True)
class TrivialIndex:
    m: tuple[int, ...]
    k_unknots: int = 0

    @property
    def size(self) -> int:
        return sum(self.m) + self.k_unknots


def trivial_diagram(lens: LensParams, index: Sequence[int] | TrivialIndex) -> GridDiagram:
    """The diagram D(I): O markings on the anti-diagonal of block 0, every
    component of grid number one, ordered by ``class * q mod p``."""
    if isinstance(index, TrivialIndex):
        m = list(index.m)
        m[0] += index.k_unknots
    else:
        m = list(index)
    lens.check()
    if len(m) != lens.p or any(v < 0 for v in m):
        raise EmptyIndex(f"index must be {lens.p} non-negative integers, got {m}")
    n = sum(m)
    if n == 0:
        raise EmptyIndex("trivial diagram needs at least one component")
    classes = sorted((j for j in range(lens.p) for _ in range(m[j])),
                     key=lambda j: (j * lens.q % lens.p, j))
    O, X = [], []
    for i, j in enumerate(classes):
        y = n - 1 - i
        block = (-j * lens.q) % lens.p
        O.append(Cell(i, y))
        X.append(Cell(block * n + i, y))
    return GridDiagram(lens, n, tuple(O), tuple(X))


def is_trivial_form(d: GridDiagram) -> TrivialIndex | None:
    comps = components(d)
    if any(c.grid_number != 1 for c in comps):
        return None
    m = [0] * d.p
    unknots = 0
    for c in comps:
        if c.is_split_unknot or c.cls == 0:
            unknots += 1
        else:
            m[c.cls] += 1
    return TrivialIndex(tuple(m), unknots)


# -- lift to S^3 ----------------------------------------------------------------

def lift_to_s3(d: GridDiagram) -> GridDiagram:
    """The p-fold lift: copy k of cell (x, y) sits at (x + k*q*n, y + k*n)."""
    p, n, qn, w = d.p, d.n, d.q * d.n, d.width
    lift = lambda cells: tuple(
        Cell((c.x + k * qn) % w, c.y + k * n) for c in cells for k in range(p)
    )
    return GridDiagram(S3, p * n, lift(d.O), lift(d.X))


# -- fixtures and enumeration -------------------------------------------------

L51 = LensParams(5, 1)


def fixture_Ln(n: int) -> GridDiagram:
    """The L(5,1) family whose first two columns form a negative skein crossing.

    Grid number N = n + 2.  Two O markings in the top rows of block 0 feed a
    staircase in the last block; columns 0 and 1 are the skein crossing.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    N = n + 2
    last = 4 * N
    O = [Cell(N - 2, N - 1), Cell(N - 1, N - 2)]
    O += [Cell(last + c, N - 3 - c) for c in range(N - 2)]
    X = [Cell(last + c, N - 1 - c) for c in range(N)]
    return GridDiagram(L51, N, tuple(O), tuple(X))


def unknot(lens: LensParams) -> GridDiagram:
    return GridDiagram(lens, 1, (Cell(0, 0),), (Cell(0, 0),))


def _placements(lens: LensParams, n: int) -> list[tuple[Cell, ...]]:
    from itertools import permutations

    return [
        tuple(Cell(b * n + col, y) for y, (col, b) in enumerate(zip(perm, blocks)))
        for perm in permutations(range(n))
        for blocks in product(range(lens.p), repeat=n)
    ]


def random_diagram(lens: LensParams, n: int, rng) -> GridDiagram:
    """Uniformly random valid diagram of grid number ``n``."""
    def place():
        cols = list(range(n))
        rng.shuffle(cols)
        return tuple(Cell(rng.randrange(lens.p) * n + c, y) for y, c in enumerate(cols))

    return GridDiagram(lens, n, place(), place())


def enumerate_diagrams(lens: LensParams, max_n: int) -> Iterator[GridDiagram]:
    """One canonical representative per translation class, grid number <= max_n."""
    lens.check()
    for n in range(1, max_n + 1):
        seen: set[tuple] = set()
        places = _placements(lens, n)
        for O in places:
            if O[0] != Cell(0, 0):
                continue  # every class has a translate with an O at the origin
            for X in places:
                seen.add(canonical_key(GridDiagram(lens, n, O, X)))
        for key in sorted(seen, key=lambda k: k[2:]):
            yield from_key(key)
