"""Row-encoded diagrams for the planner's inner loop.

A diagram of grid number n is encoded as ``(ox, xx)``: the x coordinate of
the O and of the X in each row.  The functions here mirror the ones in
:mod:`lensgrid.moves` without building GridDiagram objects; the test suite
checks the two against each other.
"""

from __future__ import annotations

from .lens_core import Cell, GridDiagram, LensParams


class Frame:
    """Constants of one (p, q, n) straightened domain."""

    __slots__ = ("p", "q", "n", "w", "qn", "qinv")

    def __init__(self, lens: LensParams, n: int):
        self.p, self.q, self.n = lens.p, lens.q, n
        self.w = lens.p * n
        self.qn = lens.q * n
        self.qinv = lens.q_inverse

    def level(self, x: int, y: int) -> int:
        return ((-(x // self.n) * self.qinv) % self.p) * self.n + y


def encode(d: GridDiagram) -> tuple[tuple[int, ...], tuple[int, ...]]:
    ox = [0] * d.n
    xx = [0] * d.n
    for c in d.O:
        ox[c.y] = c.x
    for c in d.X:
        xx[c.y] = c.x
    return tuple(ox), tuple(xx)


def decode(lens: LensParams, ox, xx) -> GridDiagram:
    return GridDiagram(
        lens, len(ox),
        tuple(Cell(x, y) for y, x in enumerate(ox)),
        tuple(Cell(x, y) for y, x in enumerate(xx)),
    )


def canonical(f: Frame, ox, xx) -> tuple:
    """Same ordering as :func:`lensgrid.lens_core.canonical_key` (minus the header)."""
    n, w, qn = f.n, f.w, f.qn
    best = None
    for ya in range(n):
        shift = -ox[ya]
        lo = [(x + shift) % w for x in ox[ya:]] + [(x + qn + shift) % w for x in ox[:ya]]
        if best is not None and lo > list(best[0]):
            continue
        hi = [(x + shift) % w for x in xx[ya:]] + [(x + qn + shift) % w for x in xx[:ya]]
        cand = (tuple(lo), tuple(hi))
        if best is None or cand < best:
            best = cand
    return best


def _interleaved(a1, a2, b1, b2, size):
    if a1 == a2 or b1 == b2:
        return False
    span = (a2 - a1) % size
    return (0 < (b1 - a1) % size < span) != (0 < (b2 - a1) % size < span)


def column_moves(f: Frame, ox, xx):
    """Yield ``(c, interleaving)`` for every legal column commutation."""
    n, w = f.n, f.w
    if n < 2:
        return
    o_row = [0] * n
    x_row = [0] * n
    for y in range(n):
        o_row[ox[y] % n] = y
        x_row[xx[y] % n] = y
    lv = f.level
    for c in range(n):
        c1 = (c + 1) % n
        yo, yx = o_row[c], x_row[c]
        yo1, yx1 = o_row[c1], x_row[c1]
        a1, a2 = lv(ox[yo], yo), lv(xx[yx], yx)
        b1 = lv((ox[yo1] - 1) % w, yo1)
        b2 = lv((xx[yx1] - 1) % w, yx1)
        if b1 in (a1, a2) or b2 in (a1, a2):
            continue
        yield c, _interleaved(a1, a2, b1, b2, w * 1)


def commute_column(f: Frame, ox, xx, c):
    n, w = f.n, f.w
    c1 = (c + 1) % n

    def mv(x):
        k = x % n
        if k == c:
            return (x + 1) % w
        if k == c1:
            return (x - 1) % w
        return x

    return tuple(map(mv, ox)), tuple(map(mv, xx))


def row_moves(f: Frame, ox, xx):
    """Yield every non-interleaving row commutation index."""
    n, w, qn = f.n, f.w, f.qn
    if n < 2:
        return
    for r in range(n):
        r1 = (r + 1) % n
        back = qn if r1 == 0 else 0  # row r1 seen from row r
        a1, a2 = ox[r], xx[r]
        b1, b2 = (ox[r1] + back) % w, (xx[r1] + back) % w
        if b1 in (a1, a2) or b2 in (a1, a2):
            continue
        if not _interleaved(a1, a2, b1, b2, w):
            yield r


def commute_row(f: Frame, ox, xx, r):
    n, w, qn = f.n, f.w, f.qn
    r1 = (r + 1) % n
    ox, xx = list(ox), list(xx)
    if r1 == 0:
        # row n-1 goes up to row 0 (x - qn); row 0 comes down to n-1 (x + qn)
        ox[r], ox[r1] = (ox[r1] + qn) % w, (ox[r] - qn) % w
        xx[r], xx[r1] = (xx[r1] + qn) % w, (xx[r] - qn) % w
    else:
        ox[r], ox[r1] = ox[r1], ox[r]
        xx[r], xx[r1] = xx[r1], xx[r]
    return tuple(ox), tuple(xx)


def has_destabilization(f: Frame, ox, xx) -> bool:
    n, w, qn = f.n, f.w, f.qn
    if n < 2:
        return False
    o_row = [0] * n
    x_row = [0] * n
    for y in range(n):
        o_row[ox[y] % n] = y
        x_row[xx[y] % n] = y

    def vert_adjacent(x, y, x2, y2):
        up = (x, y + 1) if y < n - 1 else ((x - qn) % w, 0)
        down = (x, y - 1) if y > 0 else ((x + qn) % w, n - 1)
        return (x2, y2) in (up, down)

    for y in range(n):
        xo, xxr = ox[y], xx[y]
        if xo == xxr or (xxr - xo) % w not in (1, w - 1):
            continue
        # O corner: its column partner is the X of that column
        yc = x_row[xo % n]
        if vert_adjacent(xo, y, xx[yc], yc) and (xx[yc], yc) != (xxr, y):
            return True
        yc = o_row[xxr % n]
        if vert_adjacent(xxr, y, ox[yc], yc) and (ox[yc], yc) != (xo, y):
            return True
    return False
