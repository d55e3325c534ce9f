import pytest
from hypothesis import given
from hypothesis import strategies as st

from lensgrid.errors import ParseError, ZeroPolynomial
from lensgrid.laurent import ONE, ZERO, LaurentPoly, a, parse, render, z

terms = st.dictionaries(
    st.tuples(st.integers(-6, 6), st.integers(-3, 3)), st.integers(-4, 4), max_size=5
)
polys = terms.map(LaurentPoly)


def test_render_examples():
    assert render(a(-8) - a(-8) * z(1)) == "a^-8 - a^-8 z"
    assert render(ZERO) == "0"
    assert render(ONE) == "1"
    assert render(LaurentPoly({(2, 0): -3, (0, -1): 1})) == "z^-1 - 3 a^2"


def test_zero_coefficients_dropped():
    f = a(1) - a(1)
    assert f == ZERO and not f and f.terms == {}


def test_min_degree():
    assert (a(-3) * z(2) + a(4)).a_min_degree() == -3
    with pytest.raises(ZeroPolynomial):
        ZERO.a_min_degree()


def test_parse_rejects_garbage():
    for bad in ("", "a^", "a b", "2 3", "a^x"):
        with pytest.raises(ParseError):
            parse(bad)


@given(polys)
def test_parse_render_roundtrip(f):
    assert parse(render(f)) == f


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f - f == ZERO


@given(polys, st.integers(-5, 5), st.integers(-5, 5))
def test_mono_mul_matches_product(f, da, dz):
    assert f.mono_mul(da, dz) == f * LaurentPoly.monomial(da, dz)
    assert f.mono_mul(da, dz).div_exact_z(dz).mono_mul(-da, 0) == f
