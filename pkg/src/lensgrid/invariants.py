"""Rational Legendrian and transverse invariants from grid projections."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import NotAKnot
from .lens_core import GridDiagram, components
from .projection import GridProjection, ProjectionCounts, counts, default_projection


def _counts(d: GridDiagram, proj: GridProjection | None) -> ProjectionCounts:
    return counts(proj if proj is not None else default_projection(d))


class Invariants(NamedTuple):
    tb: Fraction
    rot: Fraction
    sl_plus: Fraction
    sl_minus: Fraction

    @property
    def sl_T(self) -> Fraction:
        return max(self.sl_plus, self.sl_minus)


def from_counts(k: ProjectionCounts, p: int) -> Invariants:
    ml = Fraction(k.mu * k.lam, p)
    drift = Fraction(k.mu - k.lam, p)
    return Invariants(
        k.w - Fraction(k.c, 2) - ml,
        Fraction(k.c_d - k.c_u, 2) + drift,
        k.w - k.c_d - ml - drift,
        k.w - k.c_u - ml + drift,
    )


def invariants(d: GridDiagram, proj: GridProjection | None = None) -> Invariants:
    return from_counts(_counts(d, proj), d.p)


def tb_q(d: GridDiagram, proj: GridProjection | None = None) -> Fraction:
    return invariants(d, proj).tb


def rot_q(d: GridDiagram, proj: GridProjection | None = None) -> Fraction:
    return invariants(d, proj).rot


def sl_plus(d: GridDiagram, proj: GridProjection | None = None) -> Fraction:
    return invariants(d, proj).sl_plus


def sl_minus(d: GridDiagram, proj: GridProjection | None = None) -> Fraction:
    return invariants(d, proj).sl_minus


def sl_T(d: GridDiagram, proj: GridProjection | None = None) -> Fraction:
    """Self-linking of the push-off maximizing it (positive one on ties)."""
    return invariants(d, proj).sl_T


@dataclass(frozen=True)
class FwmReport:
    sl_T: Fraction
    e: int
    bound: Fraction
    holds: bool
    sharp: bool


def fwm_report(d: GridDiagram, engine=None) -> FwmReport:
    from .skein_engine import SkeinEngine

    engine = engine or SkeinEngine()
    e = engine.homfly(d).a_min_degree()
    sl = sl_T(d)
    bound = Fraction(e - 1, d.p)
    return FwmReport(sl, e, bound, sl <= bound, sl == bound)


@dataclass(frozen=True)
class QuadResidueReport:
    applicable: bool
    mu: int
    lam: int
    mu_lambda_ok: bool
    mu_squared_q_ok: bool

    @property
    def holds(self) -> bool:
        return not self.applicable or (self.mu_lambda_ok and self.mu_squared_q_ok)


def quad_residue_check(d: GridDiagram) -> QuadResidueReport:
    """If p*tb_Q = +-1 mod p, check mu*lambda and mu^2*q are +-1 mod p."""
    if len(components(d)) != 1:
        raise NotAKnot("quadratic residue check needs a knot diagram")
    p = d.p
    k = counts(default_projection(d))
    ptb = p * tb_q(d)
    pm1 = {1 % p, -1 % p}
    applicable = ptb.denominator == 1 and int(ptb) % p in pm1
    return QuadResidueReport(
        applicable,
        k.mu,
        k.lam,
        (k.mu * k.lam) % p in pm1,
        (k.mu * k.mu * d.q) % p in pm1,
    )
