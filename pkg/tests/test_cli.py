import subprocess
import sys

import pytest

from lensgrid.cli import main, parse_diagram, serialize_diagram
from lensgrid.errors import BadLensParams, ParseError, RowViolation
from lensgrid.lens_core import LensParams, canonical_form, fixture_Ln, random_diagram, trivial_diagram, unknot

from conftest import LENSES


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def write(tmp_path):
    def _write(text, name="d.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write


def test_roundtrip(rng):
    for lens in LENSES:
        for _ in range(10):
            d = canonical_form(random_diagram(lens, rng.randint(1, 4), rng))
            text = serialize_diagram(d)
            assert parse_diagram(text) == d
            assert serialize_diagram(parse_diagram(text)) == text


def test_comments_and_blank_lines():
    text = "# L_0\nlens 5 1   # the lens\n\ngrid 2\nO 0 1\nO 1 0\nX 8 1 # x\nX 9 0\n"
    assert parse_diagram(text) == fixture_Ln(0)


@pytest.mark.parametrize("text,err", [
    ("lens 4 2\ngrid 1\nO 0 0\nX 0 0\n", BadLensParams),
    ("lens 3 1\ngrid 2\nO 0 0\nO 1 0\nX 0 1\nX 1 1\n", RowViolation),
    ("lens 3 1\ngrid 1\nO 0 0\n", ParseError),
    ("lens 3 1\ngrid 1\nO 9 0\nX 0 0\n", ParseError),
    ("grid 1\nO 0 0\nX 0 0\n", ParseError),
    ("lens 3 1\ngrid 1\nO a 0\nX 0 0\n", ParseError),
    ("lens 3 1\ngrid 1\nO 0 0\nX 0 0\nZ 1 1\n", ParseError),
])
def test_parse_rejects(text, err):
    with pytest.raises(err):
        parse_diagram(text)


def test_validate(capsys, write):
    code, out, _ = run(capsys, "validate", write(serialize_diagram(trivial_diagram(LensParams(5, 2), [0, 1, 2, 0, 3]))))
    assert (code, out) == (0, "OK\n")
    code, out, _ = run(capsys, "validate", write("lens 3 1\ngrid 2\nO 0 0\nO 1 0\nX 0 1\nX 1 1\n"))
    assert code == 1 and out.startswith("RowViolation")
    code, out, _ = run(capsys, "validate", write("lens 4 2\ngrid 1\nO 0 0\nX 0 0\n"))
    assert code == 1 and out.startswith("BadLensParams")


def test_invariants(capsys, write):
    code, out, _ = run(capsys, "invariants", write(serialize_diagram(fixture_Ln(3))))
    assert code == 0
    lines = out.splitlines()
    assert "tb_Q = -34/5" in lines and "rot_Q = -3/1" in lines and "sl_T = -19/5" in lines
    code, out, _ = run(capsys, "invariants", write(serialize_diagram(unknot(LensParams(3, 1)))))
    assert "tb_Q = -1/1" in out.splitlines()
    code, out, _ = run(capsys, "invariants", "--all-projections", write(serialize_diagram(fixture_Ln(0))))
    assert code == 0 and "projections = 16 checked, 0 disagree" in out
    assert "counters = w " in out


def test_homfly(capsys, write, tmp_path):
    code, out, _ = run(capsys, "homfly", write(serialize_diagram(fixture_Ln(1))))
    assert (code, out) == (0, "a^-8 - a^-8 z\n")
    code, out, _ = run(capsys, "homfly", write(serialize_diagram(unknot(LensParams(5, 1)))))
    assert out == "a^-4\n"
    tree, dot = tmp_path / "t.txt", tmp_path / "t.dot"
    code, out, _ = run(capsys, "homfly", "--memo-stats", "--trace", str(tree), write(serialize_diagram(fixture_Ln(2))))
    assert code == 0 and out.splitlines()[1].startswith("memo hits=")
    assert tree.read_text().startswith("reduce L(5,1)")
    run(capsys, "homfly", "--trace", str(dot), write(serialize_diagram(fixture_Ln(2))))
    assert dot.read_text().startswith("digraph skein {")


def test_fwm(capsys, write):
    for n in range(3):
        code, out, _ = run(capsys, "fwm", write(serialize_diagram(fixture_Ln(n))))
        assert code == 0 and out.splitlines()[-1] == "SHARP"
    code, out, _ = run(capsys, "fwm", write(serialize_diagram(unknot(LensParams(2, 1)))))
    assert out.splitlines() == ["sl_T = -1/1", "e = -1", "bound = -1/1", "SHARP"]


def test_generators(capsys, write):
    code, out, _ = run(capsys, "trivial", "--p", "5", "--q", "2", "--index", "0,1,2,0,3")
    assert code == 0 and parse_diagram(out) == trivial_diagram(LensParams(5, 2), [0, 1, 2, 0, 3])
    code, out, _ = run(capsys, "fixture-ln", "--n", "0")
    assert parse_diagram(out).n == 2
    code, out, _ = run(capsys, "lift", write(serialize_diagram(unknot(LensParams(3, 1)))))
    lifted = parse_diagram(out)
    assert (lifted.p, lifted.q, lifted.n) == (1, 0, 3)


@pytest.mark.parametrize("argv", [
    ["trivial", "--p", "3", "--q", "1", "--index", "1,x,0"],
    ["trivial", "--p", "3", "--q", "1", "--index", "0,0,0"],
    ["trivial", "--p", "3", "--q", "1", "--index", "1,0"],
    ["fixture-ln", "--n", "-1"],
    ["census", "--p", "3", "--q", "1", "--max-grid", "1", "--check", "nope"],
    ["homfly"],
    ["frobnicate"],
    ["homfly", "/nonexistent/file"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        sys.exit(main(argv))
    assert exc.value.code == 3


@pytest.mark.parametrize("check", ["fwm", "skein", "projections", "moves"])
def test_census(capsys, check):
    code, out, _ = run(capsys, "census", "--p", "3", "--q", "1", "--max-grid", "2", "--check", check)
    assert code == 0 and out.endswith("33 diagrams checked, 0 counterexamples\n")


def test_byte_identical_subprocess_runs(tmp_path):
    path = tmp_path / "l3.txt"
    path.write_text(serialize_diagram(fixture_Ln(3)))
    cmd = [sys.executable, "-m", "lensgrid.cli", "homfly", "--memo-stats", str(path)]
    outs = {subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(3)}
    assert len(outs) == 1
