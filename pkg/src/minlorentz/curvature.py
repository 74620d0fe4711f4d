"""Gauss curvature K and normal curvature kappa along three formula paths.

All three paths compute the same pair of invariants and serve as mutual
oracles:

  * from jets:     K = -4 <a1'^a1'', a2'^a2''> / <a1', a2'>^3,
                   kappa = -4 det(a1', a2', a1'', a2'') / <a1', a2'>^3;
  * from triples:  rational in (f_i, g_i, h_i) and first derivatives;
  * canonical:     the natural-parameter form, with delta = sign E read off
                   the omega signs and the data (never user input).

The identity K^2 - kappa^2 = 16 a1''^2 a2''^2 / <a1', a2'>^4 ties the
discriminant to the causal characters of the accelerations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import det4, inner, wedge_inner
from .errors import SingularError
from .nullcurve import CanonicalPair, CurveJet, WeierstrassTriple

__all__ = [
    "CurvaturePair", "curvature_from_jets", "curvature_from_triples",
    "curvature_canonical", "discriminant_identity_check", "canonical_fields",
]

SING_REL = 1e-12   # relative floor for the <a1', a2'> denominator


@dataclass(frozen=True)
class CurvaturePair:
    K: float
    kappa: float

    @property
    def discriminant(self) -> float:
        return self.K * self.K - self.kappa * self.kappa


def _guard_pairing(ip: float, scale: float) -> None:
    if abs(ip) <= SING_REL * max(scale, 1e-300):
        raise SingularError(
            f"<alpha1', alpha2'> = {ip:g} is singular at this point")


def curvature_from_jets(j1: CurveJet, j2: CurveJet) -> CurvaturePair:
    """Curvatures from the first two derivatives of the generating curves."""
    ip = inner(j1.alpha_p, j2.alpha_p)
    _guard_pairing(ip, j1.alpha_p.norm_euclid() * j2.alpha_p.norm_euclid())
    ip3 = ip ** 3
    K = -4.0 * wedge_inner(j1.alpha_p, j1.alpha_pp,
                           j2.alpha_p, j2.alpha_pp) / ip3
    kappa = -4.0 * det4(j1.alpha_p, j2.alpha_p,
                        j1.alpha_pp, j2.alpha_pp) / ip3
    return CurvaturePair(K, kappa)


def curvature_from_triples(tr1: WeierstrassTriple, tr2: WeierstrassTriple,
                           t1: float, t2: float) -> CurvaturePair:
    """Curvatures rational in the Weierstrass functions and first derivatives."""
    tr1._check_t(t1)
    tr2._check_t(t2)
    f1, g1, h1 = tr1.f(t1), tr1.g(t1), tr1.h(t1)
    f2, g2, h2 = tr2.f(t2), tr2.g(t2), tr2.h(t2)
    g1p, h1p = tr1.g.deriv(t1), tr1.h.deriv(t1)
    g2p, h2p = tr2.g.deriv(t2), tr2.h.deriv(t2)
    dg, dh = g1 - g2, h1 - h2
    den = f1 * f2 * dg * dh
    scale = (abs(f1 * f2) * (1.0 + abs(g1) + abs(g2)) * (1.0 + abs(h1) + abs(h2)))
    _guard_pairing(den, scale)
    pref = 2.0 / den
    A = g1p * g2p / (dg * dg)
    B = h1p * h2p / (dh * dh)
    return CurvaturePair(pref * (A + B), pref * (A - B))


def curvature_canonical(p1: CanonicalPair, p2: CanonicalPair,
                        t1: float, t2: float) -> CurvaturePair:
    """Curvatures in canonical coordinates; delta comes from the data."""
    p1._check_t(t1)
    p2._check_t(t2)
    g1, h1, g2, h2 = p1.g(t1), p1.h(t1), p2.g(t2), p2.h(t2)
    g1p, h1p = p1.g.deriv(t1), p1.h.deriv(t1)
    g2p, h2p = p2.g.deriv(t2), p2.h.deriv(t2)
    dg, dh = g1 - g2, h1 - h2
    P = dg * dh
    scale = (1.0 + abs(g1) + abs(g2)) * (1.0 + abs(h1) + abs(h2))
    _guard_pairing(P, scale)
    delta = -1.0 if p1.omega * p2.omega * P > 0 else 1.0
    root = np.sqrt(abs(g1p * h1p * g2p * h2p))
    pref = -delta * 8.0 * root / abs(P)
    A = g1p * g2p / (dg * dg)
    B = h1p * h2p / (dh * dh)
    return CurvaturePair(float(pref * (A + B)), float(pref * (A - B)))


def discriminant_identity_check(j1: CurveJet, j2: CurveJet) -> float:
    """Absolute residual of K^2 - kappa^2 = 16 a1''^2 a2''^2 / <a1',a2'>^4."""
    pair = curvature_from_jets(j1, j2)
    ip = inner(j1.alpha_p, j2.alpha_p)
    rhs = 16.0 * inner(j1.alpha_pp, j1.alpha_pp) * \
        inner(j2.alpha_pp, j2.alpha_pp) / ip ** 4
    return abs(pair.discriminant - rhs)


def canonical_fields(p1: CanonicalPair, p2: CanonicalPair,
                     T1: np.ndarray, T2: np.ndarray):
    """Vectorised canonical curvatures over parameter arrays.

    Returns (K, kappa, E, delta, valid); points where the metric coefficient
    collapses are masked out instead of raising.
    """
    p1._check_t(T1)
    p2._check_t(T2)
    g1, h1 = p1.g(T1), p1.h(T1)
    g2, h2 = p2.g(T2), p2.h(T2)
    g1p, h1p = p1.g.deriv(T1), p1.h.deriv(T1)
    g2p, h2p = p2.g.deriv(T2), p2.h.deriv(T2)
    dg, dh = g1 - g2, h1 - h2
    P = dg * dh
    prod = g1p * h1p * g2p * h2p
    scale = np.max(np.abs(P)) if P.size else 0.0
    valid = (np.abs(P) > SING_REL * max(scale, 1e-300)) & (prod != 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        root = np.sqrt(np.abs(prod))
        delta = np.where(p1.omega * p2.omega * P > 0, -1.0, 1.0)
        pref = -delta * 8.0 * root / np.abs(P)
        A = g1p * g2p / (dg * dg)
        B = h1p * h2p / (dh * dh)
        K = pref * (A + B)
        kappa = pref * (A - B)
        E = delta * np.abs(P) / (4.0 * root)
    valid &= np.isfinite(K) & np.isfinite(kappa)
    return K, kappa, E, delta, valid
