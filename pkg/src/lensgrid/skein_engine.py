"""HOMFLY-type invariant J_{p,q} by skein reduction of grid diagrams.

Every diagram is driven by a plan of commutations to a destabilization (or,
once all components have grid number one, to the trivial diagram D(I)).
Interleaving column commutations along the way are crossing changes, so
each one spawns a resolution branch that is evaluated recursively.
"""

from __future__ import annotations

import random
import sys
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import CycleDetected, EmptyLink, NoReductionNeeded, PlanSearchFailed
from .invariants import sl_T
from . import rowcode
from .laurent import ONE, LaurentPoly, a, z
from .lens_core import (
    GridDiagram,
    LensParams,
    TrivialIndex,
    canonical_form,
    canonical_key,
    components,
    from_key,
    is_trivial_form,
    trivial_diagram,
)
from .moves import (
    STABILIZATION_TYPES,
    CommutationClass,
    SkeinSign,
    classify_column_commutation,
    classify_row_commutation,
    commute_columns,
    commute_rows,
    destabilize,
    find_destabilization_sites,
    resolve_skein,
    skein_sign,
    stabilize,
)

_IL = CommutationClass.INTERLEAVING
_NI = CommutationClass.NON_INTERLEAVING


def unknot_factor(p: int) -> LaurentPoly:
    """(a^-p - a^p) / z, the cost of a split unknot."""
    return (a(-p) - a(p)) * z(-1)


def trivial_value(lens: LensParams, index: TrivialIndex) -> LaurentPoly:
    p = lens.p
    if index.size == 0:
        raise EmptyLink("a trivial link needs at least one component")
    core = TrivialIndex(tuple(0 if j == 0 else m for j, m in enumerate(index.m)))
    unknots = index.k_unknots + index.m[0]
    if core.size:
        base = a(int(p * sl_T(trivial_diagram(lens, core))) + 1)
    else:
        base = a(-p + 1)
        unknots -= 1
    return base * unknot_factor(p) ** unknots


# -- plans --------------------------------------------------------------------

class Step(NamedTuple):
    kind: str  # "row", "col", "stab" or "destab"
    arg: object
    label: str = ""

    def apply(self, d: GridDiagram) -> GridDiagram:
        if self.kind == "row":
            return commute_rows(d, self.arg)
        if self.kind == "col":
            return commute_columns(d, self.arg)
        if self.kind == "destab":
            return destabilize(d, self.arg)
        kind, i, stype = self.arg
        return stabilize(d, kind, i, stype)

    def __str__(self) -> str:
        if self.kind == "col":
            return f"col {self.arg} {self.label}"
        if self.kind == "row":
            return f"row {self.arg}"
        if self.kind == "destab":
            s = self.arg
            return f"destab {s.kind}({s.corner.x},{s.corner.y}) {s.type}"
        kind, i, stype = self.arg
        return f"stab {kind}{i} {stype}"


def _moves(d: GridDiagram, extra: int, n_floor: int, rng):
    """Legal plan moves out of ``d`` with their cost (1 = crossing change)."""
    out = []
    for c in range(d.n if d.n > 1 else 0):
        k = classify_column_commutation(d, c)
        if k is not CommutationClass.ILLEGAL:
            out.append((int(k is _IL), Step("col", c, k.value)))
        if classify_row_commutation(d, c) is _NI:
            out.append((0, Step("row", c)))
    if d.n > n_floor:
        out.extend((0, Step("destab", s)) for s in find_destabilization_sites(d))
    if extra:
        for kind, cells in (("O", d.O), ("X", d.X)):
            for i in range(len(cells)):
                out.extend((0, Step("stab", (kind, i, t))) for t in STABILIZATION_TYPES)
    if rng is not None:
        rng.shuffle(out)
    return out


def _search(d: GridDiagram, goal, extra: int, max_states: int, rng, n_floor: int):
    """Breadth-first search for the shortest move sequence reaching a goal.

    Within one depth, states reached with fewer crossing changes win.
    """
    n_cap = d.n + extra
    start = canonical_key(d)
    parent: dict = {start: None}

    def path(key):
        steps = []
        while parent[key] is not None:
            key, step = parent[key]
            steps.append(step)
        return steps[::-1]

    if goal(d, start):
        return []
    layer = [(0, d, start)]
    while layer:
        found: dict = {}
        for cost, cur, key in layer:
            for c, step in _moves(cur, cur.n < n_cap, n_floor, rng):
                nxt = step.apply(cur)
                nkey = canonical_key(nxt)
                if nkey in parent:
                    continue
                prev = found.get(nkey)
                if prev is None or cost + c < prev[0]:
                    found[nkey] = (cost + c, nxt, key, step)
        layer = []
        for nkey, (cost, nxt, key, step) in sorted(found.items(), key=lambda t: t[1][0]):
            parent[nkey] = (key, step)
            layer.append((cost, nxt, nkey))
        hits = [t for t in layer if goal(t[1], t[2])]
        if hits:
            return path(hits[0][2])
        if len(parent) > max_states:
            break
    return None


def _fast_search(d: GridDiagram, goal, max_states: int, rng):
    """Commutation-only search on row encodings; ``goal(f, ox, xx, key)``."""
    f = rowcode.Frame(d.lens, d.n)
    ox, xx = rowcode.encode(d)
    start = rowcode.canonical(f, ox, xx)
    if goal(f, ox, xx, start):
        return []
    parent: dict = {start: None}
    layer = [(0, ox, xx, start)]
    while layer:
        found: dict = {}
        for cost, ox, xx, key in layer:
            moves = [(int(il), Step("col", c, _IL.value if il else _NI.value))
                     for c, il in rowcode.column_moves(f, ox, xx)]
            moves += [(0, Step("row", r)) for r in rowcode.row_moves(f, ox, xx)]
            if rng is not None:
                rng.shuffle(moves)
            for c, step in moves:
                if step.kind == "col":
                    nox, nxx = rowcode.commute_column(f, ox, xx, step.arg)
                else:
                    nox, nxx = rowcode.commute_row(f, ox, xx, step.arg)
                nkey = rowcode.canonical(f, nox, nxx)
                if nkey in parent:
                    continue
                prev = found.get(nkey)
                if prev is None or cost + c < prev[0]:
                    found[nkey] = (cost + c, nox, nxx, key, step)
        layer = []
        for nkey, (cost, nox, nxx, key, step) in sorted(found.items(), key=lambda t: t[1][0]):
            parent[nkey] = (key, step)
            layer.append((cost, nox, nxx, nkey))
        for _, nox, nxx, nkey in layer:
            if goal(f, nox, nxx, nkey):
                steps = []
                while parent[nkey] is not None:
                    nkey, step = parent[nkey]
                    steps.append(step)
                return steps[::-1]
        if len(parent) > max_states:
            break
    return None


def _all_grid_number_one(d: GridDiagram) -> bool:
    return all(c.grid_number == 1 for c in components(d))


def reduction_plan(d: GridDiagram, *, seed=None, max_states: int = 200_000,
                   max_extra: int = 2) -> list[Step]:
    """Commutations (possibly after stabilizations) ending in a drop of grid number.

    Searches with no stabilizations first and widens only when stuck.
    """
    if _all_grid_number_one(d):
        raise NoReductionNeeded("every component already has grid number one")
    n0 = d.n
    rng = random.Random(seed) if seed is not None else None

    def ready(cur, key):
        return cur.n < n0 or (cur.n == n0 and find_destabilization_sites(cur))

    for extra in range(max_extra + 1):
        if extra == 0:
            plan = _fast_search(d, lambda f, ox, xx, k: rowcode.has_destabilization(f, ox, xx),
                                max_states, rng)
        else:
            plan = _search(d, ready, extra, max_states, rng, n0)
        if plan is not None:
            cur = d
            for step in plan:
                cur = step.apply(cur)
            if cur.n == n0:
                sites = find_destabilization_sites(cur)
                if rng is not None:
                    rng.shuffle(sites)
                plan.append(Step("destab", sites[0]))
            return plan
    raise PlanSearchFailed(f"no reduction found for grid number {n0}")


def sorting_plan(d: GridDiagram, *, seed=None, max_states: int = 200_000) -> list[Step]:
    """Commutations taking a grid-number-one link to its trivial diagram D(I)."""
    index = is_trivial_form(d)
    if index is None:
        raise PlanSearchFailed("diagram has a component of grid number > 1")
    t = trivial_diagram(d.lens, index)
    target = rowcode.canonical(rowcode.Frame(t.lens, t.n), *rowcode.encode(t))
    rng = random.Random(seed) if seed is not None else None
    plan = _fast_search(d, lambda f, ox, xx, key: key == target, max_states, rng)
    if plan is None:
        raise PlanSearchFailed("could not sort grid-number-one link into D(I)")
    return plan


# -- trace --------------------------------------------------------------------

@dataclass
class TraceNode:
    diagram: GridDiagram
    kind: str  # "trivial", "memo", "reduce", "sort", "split"
    value: LaurentPoly | None = None
    note: str = ""
    edges: list = field(default_factory=list)  # (label, TraceNode)


class SkeinTrace:
    def __init__(self, root: TraceNode):
        self.root = root

    def to_text(self) -> str:
        lines = []

        def walk(node: TraceNode, depth: int, label: str):
            pad = "  " * depth
            head = f"{label}: " if label else ""
            d = node.diagram
            desc = f"L({d.p},{d.q}) n={d.n} {_key_text(d)}"
            val = f" = {node.value}" if node.value is not None else ""
            note = f" [{node.note}]" if node.note else ""
            lines.append(f"{pad}{head}{node.kind} {desc}{note}{val}")
            for lab, child in node.edges:
                walk(child, depth + 1, lab)

        walk(self.root, 0, "")
        return "\n".join(lines) + "\n"

    def to_graph(self) -> str:
        ids: dict = {}
        nodes, edges = [], []

        def ident(node: TraceNode) -> str:
            k = canonical_form(node.diagram)
            if k not in ids:
                ids[k] = f"n{len(ids)}"
                val = f" value=\"{node.value}\"" if node.value is not None else ""
                nodes.append(f"  {ids[k]} [label=\"{_key_text(k)}\" kind={node.kind}{val}];")
            return ids[k]

        def walk(node: TraceNode):
            src = ident(node)
            for lab, child in node.edges:
                dst = ident(child)
                edges.append(f"  {src} -> {dst} [label=\"{lab}\"];")
                walk(child)

        walk(self.root)
        return "digraph skein {\n" + "\n".join(nodes + edges) + "\n}\n"


def _key_text(d: GridDiagram) -> str:
    o = " ".join(f"{c.x},{c.y}" for c in d.O)
    x = " ".join(f"{c.x},{c.y}" for c in d.X)
    return f"O[{o}] X[{x}]"


# -- engine -------------------------------------------------------------------

def _strip_unknots(d: GridDiagram) -> tuple[GridDiagram | None, int]:
    """Delete coincident pairs (split unknots) with their rows and columns."""
    pairs = sorted(set(d.O) & set(d.X))
    if not pairs:
        return d, 0
    if len(pairs) == d.n:
        return None, len(pairs)
    rows = {c.y for c in pairs}
    cols = {c.x % d.n for c in pairs}
    keep_rows = [y for y in range(d.n) if y not in rows]
    keep_cols = [c for c in range(d.n) if c not in cols]
    ry = {y: i for i, y in enumerate(keep_rows)}
    rc = {c: i for i, c in enumerate(keep_cols)}
    m = len(keep_rows)

    def move(cells):
        out = []
        for cell in cells:
            if cell in pairs:
                continue
            b, c = divmod(cell.x, d.n)
            out.append(type(cell)(b * m + rc[c], ry[cell.y]))
        return tuple(out)

    return GridDiagram(d.lens, m, move(d.O), move(d.X)), len(pairs)


@dataclass
class MemoStats:
    hits: int = 0
    misses: int = 0
    entries: int = 0
    plans: int = 0
    branches: int = 0


class SkeinEngine:
    """Memoized evaluator of J_{p,q}.

    ``seed`` randomizes tie-breaking in the plan search; ``workers`` > 1
    evaluates the resolution branches of each top-level plan concurrently.
    """

    def __init__(self, *, seed=None, workers: int = 1, max_states: int = 200_000,
                 max_extra: int = 2):
        self.seed = seed
        self.workers = workers
        self.max_states = max_states
        self.max_extra = max_extra
        self._memo: dict[tuple, LaurentPoly] = {}
        self._lock = threading.Lock()
        self.stats = MemoStats()
        self._rng = random.Random(seed) if seed is not None else None

    # memo table: insert-if-absent, first writer wins
    def _lookup(self, key):
        with self._lock:
            val = self._memo.get(key)
            if val is None:
                self.stats.misses += 1
            else:
                self.stats.hits += 1
            return val

    def _store(self, key, val: LaurentPoly) -> LaurentPoly:
        with self._lock:
            val = self._memo.setdefault(key, val)
            self.stats.entries = len(self._memo)
            return val

    def _plan_seed(self):
        if self._rng is None:
            return None
        with self._lock:
            return self._rng.getrandbits(32)

    def homfly(self, d: GridDiagram) -> LaurentPoly:
        return self.homfly_with_trace(d, trace=False)[0]

    def homfly_with_trace(self, d: GridDiagram, trace: bool = True):
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, 20_000))
        try:
            node = self._eval(d, frozenset(), trace, top=True)
        finally:
            sys.setrecursionlimit(limit)
        return node.value, (SkeinTrace(node) if trace else None)

    def _eval(self, d: GridDiagram, active: frozenset, trace: bool, top=False) -> TraceNode:
        key = canonical_key(d)
        hit = self._lookup(key)
        if hit is not None:
            return TraceNode(from_key(key), "memo", hit)
        if key in active:
            raise CycleDetected(f"diagram recurred on the recursion path (n={d.n})")
        node = self._evaluate(from_key(key), active | {key}, trace, top)
        node.value = self._store(key, node.value)
        return node

    def _evaluate(self, d: GridDiagram, active, trace, top) -> TraceNode:
        rest, k = _strip_unknots(d)
        if rest is None:
            return TraceNode(d, "trivial", trivial_value(d.lens, TrivialIndex((0,) * d.p, k)))
        if k:
            child = self._eval(rest, active, trace)
            node = TraceNode(d, "split", child.value * unknot_factor(d.p) ** k,
                             f"{k} unknot(s)")
            if trace:
                node.edges.append(("strip", child))
            return node

        index = is_trivial_form(d)
        if index is not None:
            if canonical_key(d) == canonical_key(trivial_diagram(d.lens, index)):
                return TraceNode(d, "trivial", trivial_value(d.lens, index))
            plan = sorting_plan(d, seed=self._plan_seed(), max_states=self.max_states)
            kind = "sort"
        else:
            plan = reduction_plan(d, seed=self._plan_seed(), max_states=self.max_states,
                                  max_extra=self.max_extra)
            kind = "reduce"
        with self._lock:
            self.stats.plans += 1
        return self._execute(d, plan, kind, active, trace, top, index)

    def _execute(self, d, plan, kind, active, trace, top, index) -> TraceNode:
        p = d.p
        node = TraceNode(d, kind, note="; ".join(map(str, plan)))
        branches = []  # (coefficient, resolved diagram, label)
        coeff = ONE
        cur = d
        for step in plan:
            if step.kind == "col" and step.label == _IL.value:
                sign = skein_sign(cur, step.arg)
                resolved = resolve_skein(cur, step.arg)
                if sign is SkeinSign.POSITIVE:
                    # J(L+) = a^2p J(L-) + a^p z J(L0)
                    branches.append((coeff * a(p) * z(1), resolved, f"resolve+ col {step.arg}"))
                    coeff = coeff * a(2 * p)
                else:
                    # J(L-) = a^-2p J(L+) - a^-p z J(L0)
                    branches.append((-(coeff * a(-p) * z(1)), resolved, f"resolve- col {step.arg}"))
                    coeff = coeff * a(-2 * p)
            cur = step.apply(cur)
        with self._lock:
            self.stats.branches += len(branches)

        if kind == "sort":
            final_node = TraceNode(canonical_form(cur), "trivial", trivial_value(d.lens, index))
        else:
            final_node = self._eval(cur, active, trace)

        if top and self.workers > 1 and len(branches) > 1:
            with ThreadPoolExecutor(self.workers) as pool:
                futs = [pool.submit(self._eval, r, active, trace) for _, r, _ in branches]
                children = [f.result() for f in futs]
        else:
            children = [self._eval(r, active, trace) for _, r, _ in branches]

        total = coeff * final_node.value
        for (c, _, _), child in zip(branches, children):
            total = total + c * child.value
        node.value = total
        if trace:
            node.edges.append(("reduced" if kind == "reduce" else "sorted", final_node))
            node.edges.extend((lab, ch) for (_, _, lab), ch in zip(branches, children))
        return node


def homfly(d: GridDiagram, engine: SkeinEngine | None = None) -> LaurentPoly:
    return (engine or SkeinEngine()).homfly(d)
