"""Sparse Laurent polynomials in a and z with integer coefficients."""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .errors import ParseError, ZeroPolynomial

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coeff>\d+)?\s*
        (?P<a>a(?:\^(?P<ae>-?\d+))?)?\s*
        (?P<z>z(?:\^(?P<ze>-?\d+))?)?\s*""",
    re.VERBOSE,
)


class LaurentPoly:
    """Immutable map ``(deg_a, deg_z) -> nonzero int``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, int], int] = {}
        for (da, dz), c in items:
            acc[(da, dz)] = acc.get((da, dz), 0) + c
        self._terms = {k: v for k, v in acc.items() if v}
        self._hash = None

    @classmethod
    def monomial(cls, da: int = 0, dz: int = 0, coeff: int = 1) -> "LaurentPoly":
        return cls({(da, dz): coeff})

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.monomial(0, 0, other)
        return isinstance(other, LaurentPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.monomial(0, 0, other)
        return LaurentPoly(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({k: v * other for k, v in self._terms.items()})
        out: dict[tuple[int, int], int] = {}
        for (a1, z1), c1 in self._terms.items():
            for (a2, z2), c2 in other._terms.items():
                k = (a1 + a2, z1 + z2)
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers are only defined for monomials")
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def mono_mul(self, da: int, dz: int, coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly({(a + da, z + dz): c * coeff for (a, z), c in self._terms.items()})

    def div_exact_z(self, k: int = 1) -> "LaurentPoly":
        return self.mono_mul(0, -k)

    def a_min_degree(self) -> int:
        if not self._terms:
            raise ZeroPolynomial("the zero polynomial has no minimum degree")
        return min(a for a, _ in self._terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({render(self)!r})"

    def __str__(self) -> str:
        return render(self)


ZERO = LaurentPoly()
ONE = LaurentPoly.monomial()


def a(k: int = 1) -> LaurentPoly:
    return LaurentPoly.monomial(k, 0)


def z(k: int = 1) -> LaurentPoly:
    return LaurentPoly.monomial(0, k)


def _power(var: str, e: int) -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


def render(f: LaurentPoly) -> str:
    """Canonical text: ascending (deg_a, deg_z), e.g. ``a^-8 - a^-8 z``."""
    if not f:
        return "0"
    out = []
    for i, ((da, dz), c) in enumerate(sorted(f.terms.items())):
        body = " ".join(s for s in (_power("a", da), _power("z", dz)) if s)
        mag = abs(c)
        text = body if mag == 1 and body else (f"{mag} {body}" if body else str(mag))
        if i == 0:
            out.append(("-" if c < 0 else "") + text)
        else:
            out.append(("- " if c < 0 else "+ ") + text)
    return " ".join(out)


def parse(text: str) -> LaurentPoly:
    s = text.strip()
    if s == "0":
        return ZERO
    if not s:
        raise ParseError("empty polynomial text")
    terms = []
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m["coeff"] or m["a"] or m["z"]):
            raise ParseError(f"cannot parse polynomial near {s[pos:]!r}")
        if pos > 0 and not m["sign"]:
            raise ParseError(f"missing +/- separator near {s[pos:]!r}")
        c = int(m["coeff"]) if m["coeff"] else 1
        if m["sign"] == "-":
            c = -c
        da = (int(m["ae"]) if m["ae"] else 1) if m["a"] else 0
        dz = (int(m["ze"]) if m["ze"] else 1) if m["z"] else 0
        terms.append(((da, dz), c))
        pos = m.end()
    return LaurentPoly(terms)
