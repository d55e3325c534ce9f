"""Command-line interface.

Diagram files are line oriented::

    # comments run to the end of a line
    lens P Q
    grid N
    O x y        (exactly N lines)
    X x y        (exactly N lines)

Exit codes: 0 success, 1 invalid input diagram, 2 engine error or property
counterexample, 3 usage error.

``homfly --trace FILE`` writes an indented tree, one node per line::

    <label>: <kind> L(p,q) n=<n> O[x,y ...] X[x,y ...] [<note>] = <value>

where kind is one of trivial, split, reduce, sort, memo (a memo node repeats
a diagram expanded elsewhere in the tree).  A FILE ending in ``.dot`` or
``.gv`` gets a graph description instead: one node per canonical diagram,
edges labeled by the plan step that produced them.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Callable, Iterable

from .errors import EngineError, GridError, InvalidDiagram, ParseError
from .invariants import fwm_report, invariants, tb_q
from .lens_core import (
    Cell,
    GridDiagram,
    LensParams,
    components,
    enumerate_diagrams,
    fixture_Ln,
    lift_to_s3,
    trivial_diagram,
    validate,
)
from .projection import all_projections, counts, default_projection
from .skein_engine import SkeinEngine

EXIT_OK, EXIT_INVALID, EXIT_ENGINE, EXIT_USAGE = 0, 1, 2, 3


# -- diagram files ------------------------------------------------------------

def parse_diagram(text: str) -> GridDiagram:
    """Parse and validate a diagram file."""
    lens = n = None
    O, X = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        words = raw.split("#", 1)[0].split()
        if not words:
            continue
        head, args = words[0], words[1:]
        try:
            nums = [int(w) for w in args]
        except ValueError:
            raise ParseError(f"line {lineno}: expected integers, got {raw.strip()!r}") from None
        if head == "lens" and len(nums) == 2 and lens is None:
            lens = LensParams(*nums)
            lens.check()
        elif head == "grid" and len(nums) == 1 and lens is not None and n is None:
            n = nums[0]
            if n < 1:
                raise ParseError(f"line {lineno}: grid number must be positive")
        elif head in ("O", "X") and len(nums) == 2 and n is not None:
            x, y = nums
            if not (0 <= x < lens.p * n and 0 <= y < n):
                raise ParseError(f"line {lineno}: cell ({x}, {y}) is outside the grid")
            (O if head == "O" else X).append(Cell(x, y))
        else:
            raise ParseError(f"line {lineno}: unexpected {raw.strip()!r}")
    if n is None:
        raise ParseError("missing 'lens P Q' or 'grid N' header")
    if len(O) != n or len(X) != n:
        raise ParseError(f"grid {n} needs {n} O and {n} X lines, got {len(O)} and {len(X)}")
    return validate(GridDiagram(lens, n, tuple(O), tuple(X)))


def serialize_diagram(d: GridDiagram) -> str:
    lines = [f"lens {d.p} {d.q}", f"grid {d.n}"]
    lines += [f"O {c.x} {c.y}" for c in d.O]
    lines += [f"X {c.x} {c.y}" for c in d.X]
    return "\n".join(lines) + "\n"


def frac(v) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def _read(path: str) -> GridDiagram:
    if path == "-":
        return parse_diagram(sys.stdin.read())
    with open(path) as fh:
        return parse_diagram(fh.read())


# -- commands -----------------------------------------------------------------

def _invariant_values(d: GridDiagram, proj=None) -> tuple:
    v = invariants(d, proj)
    return v.tb, v.rot, v.sl_plus, v.sl_minus, v.sl_T


def cmd_validate(args, out) -> int:
    try:
        _read(args.file)
    except (InvalidDiagram, ParseError) as exc:
        out(f"{type(exc).__name__}: {exc}")
        return EXIT_INVALID
    out("OK")
    return EXIT_OK


def cmd_invariants(args, out) -> int:
    d = _read(args.file)
    tb, rot, sp, sm, st = _invariant_values(d)
    k = counts(default_projection(d))
    out(f"tb_Q = {frac(tb)}")
    out(f"rot_Q = {frac(rot)}")
    out(f"sl_+ = {frac(sp)}")
    out(f"sl_- = {frac(sm)}")
    out(f"sl_T = {frac(st)}")
    out(f"mu = {k.mu}")
    out(f"lambda = {k.lam}")
    out("classes = " + " ".join(str(c.cls) for c in components(d)))
    if args.all_projections:
        ref = (tb, rot, sp, sm, st)
        total = bad = 0
        for proj in all_projections(d):
            total += 1
            bad += _invariant_values(d, proj) != ref
        out(f"projections = {total} checked, {bad} disagree")
        out(f"counters = w {k.w} c {k.c} c_d {k.c_d} c_u {k.c_u} mu {k.mu} lambda {k.lam}")
        if bad:
            return EXIT_ENGINE
    return EXIT_OK


def cmd_homfly(args, out) -> int:
    d = _read(args.file)
    engine = SkeinEngine()
    value, trace = engine.homfly_with_trace(d, trace=bool(args.trace))
    out(str(value))
    if args.trace:
        graph = args.trace.endswith((".dot", ".gv"))
        with open(args.trace, "w") as fh:
            fh.write(trace.to_graph() if graph else trace.to_text())
    if args.memo_stats:
        s = engine.stats
        out(f"memo hits={s.hits} misses={s.misses} entries={s.entries} "
            f"plans={s.plans} branches={s.branches}")
    return EXIT_OK


def cmd_fwm(args, out) -> int:
    d = _read(args.file)
    r = fwm_report(d)
    flag = "SHARP" if r.sharp else ("HOLDS" if r.holds else "VIOLATED")
    out(f"sl_T = {frac(r.sl_T)}")
    out(f"e = {r.e}")
    out(f"bound = {frac(r.bound)}")
    out(flag)
    return EXIT_OK if r.holds else EXIT_ENGINE


def _parse_index(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed index {text!r}") from None


def cmd_trivial(args, out) -> int:
    lens = LensParams(args.p, args.q)
    out(serialize_diagram(trivial_diagram(lens, args.index)), end="")
    return EXIT_OK


def cmd_fixture_ln(args, out) -> int:
    if args.n < 0:
        raise argparse.ArgumentTypeError("--n must be non-negative")
    out(serialize_diagram(fixture_Ln(args.n)), end="")
    return EXIT_OK


def cmd_lift(args, out) -> int:
    out(serialize_diagram(lift_to_s3(_read(args.file))), end="")
    return EXIT_OK


def _check_fwm(engine: SkeinEngine) -> Callable[[GridDiagram], bool]:
    return lambda d: fwm_report(d, engine).holds


def _check_projections(d: GridDiagram) -> bool:
    ref = _invariant_values(d)
    return all(_invariant_values(d, p) == ref for p in all_projections(d))


def _check_skein(engine: SkeinEngine) -> Callable[[GridDiagram], bool]:
    from .laurent import a, z
    from .moves import (
        CommutationClass, SkeinSign, _swap_columns, classify_column_commutation,
        resolve_skein, skein_sign,
    )

    def check(d: GridDiagram) -> bool:
        p = d.p
        for c in range(d.n if d.n > 1 else 0):
            if classify_column_commutation(d, c) is not CommutationClass.INTERLEAVING:
                continue
            j, j_ch, j_0 = (engine.homfly(x) for x in (d, _swap_columns(d, c), resolve_skein(d, c)))
            if skein_sign(d, c) is SkeinSign.POSITIVE:
                lhs, rhs = a(-p) * j - a(p) * j_ch, z(1) * j_0
            else:
                lhs, rhs = a(-p) * j_ch - a(p) * j, z(1) * j_0
            if lhs != rhs:
                return False
        return True

    return check


def _check_moves(engine: SkeinEngine) -> Callable[[GridDiagram], bool]:
    from .moves import (
        STABILIZATION_TYPES, CommutationClass, classify_column_commutation,
        classify_row_commutation, commute_columns, commute_rows, stabilize,
    )

    def check(d: GridDiagram) -> bool:
        j, tb = engine.homfly(d), tb_q(d)
        for kind, cells in (("O", d.O), ("X", d.X)):
            for i, cell in enumerate(cells):
                coincident = cell in d.O and cell in d.X
                for st in STABILIZATION_TYPES:
                    if st.marking != kind:
                        continue
                    s = stabilize(d, kind, i, st)
                    if engine.homfly(s) != j:
                        return False
                    if st.legendrian and tb_q(s) != tb:
                        return False
                    if not st.legendrian and not coincident and tb_q(s) == tb:
                        return False
        for c in range(d.n if d.n > 1 else 0):
            if classify_column_commutation(d, c) is CommutationClass.NON_INTERLEAVING:
                if engine.homfly(commute_columns(d, c)) != j:
                    return False
            if classify_row_commutation(d, c) is CommutationClass.NON_INTERLEAVING:
                if engine.homfly(commute_rows(d, c)) != j:
                    return False
        return True

    return check


def cmd_census(args, out) -> int:
    lens = LensParams(args.p, args.q)
    lens.check()
    engine = SkeinEngine()
    check = {
        "fwm": lambda: _check_fwm(engine),
        "skein": lambda: _check_skein(engine),
        "projections": lambda: _check_projections,
        "moves": lambda: _check_moves(engine),
    }[args.check]()
    total = failures = 0
    for d in enumerate_diagrams(lens, args.max_grid):
        total += 1
        if not check(d):
            failures += 1
            out(f"# counterexample ({args.check})")
            out(serialize_diagram(d), end="")
    out(f"{args.check}: {total} diagrams checked, {failures} counterexamples")
    return EXIT_ENGINE if failures else EXIT_OK


# -- entry point --------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="lensgrid", description="Grid diagrams of links in lens spaces.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_file(name: str, fn, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file", help="diagram file, or - for stdin")
        sp.set_defaults(fn=fn)
        return sp

    with_file("validate", cmd_validate, "check a diagram file")
    sp = with_file("invariants", cmd_invariants, "tb_Q, rot_Q and self-linking numbers")
    sp.add_argument("--all-projections", action="store_true",
                    help="check agreement over every projection")
    sp = with_file("homfly", cmd_homfly, "the HOMFLY polynomial J")
    sp.add_argument("--trace", metavar="OUT", help="write the skein tree to OUT")
    sp.add_argument("--memo-stats", action="store_true", help="print memo table counters")
    with_file("fwm", cmd_fwm, "check sl_T <= (e - 1)/p")
    with_file("lift", cmd_lift, "the lift to S^3")

    sp = sub.add_parser("trivial", help="the trivial diagram D(I)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--index", type=_parse_index, required=True, metavar="m0,m1,...")
    sp.set_defaults(fn=cmd_trivial)

    sp = sub.add_parser("fixture-ln", help="the L_n family diagram")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(fn=cmd_fixture_ln)

    sp = sub.add_parser("census", help="run a property suite over all small diagrams")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--max-grid", type=int, required=True)
    sp.add_argument("--check", required=True, choices=("fwm", "skein", "projections", "moves"))
    sp.set_defaults(fn=cmd_census)
    return ap


def main(argv: Iterable[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(None if argv is None else list(argv))

    def out(text: str = "", end: str = "\n") -> None:
        sys.stdout.write(text + end)

    try:
        return args.fn(args, out)
    except OSError as exc:
        print(f"lensgrid: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except argparse.ArgumentTypeError as exc:
        print(f"lensgrid: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidDiagram as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ParseError as exc:
        print(f"ParseError: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except EngineError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    except GridError as exc:  # EmptyIndex and friends come from bad arguments
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
