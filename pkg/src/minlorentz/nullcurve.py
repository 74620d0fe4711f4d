"""Null curves in the neutral 4-space through their Weierstrass data.

A triple of functions (f, g, h) with f != 0 generates the null velocity

    alpha' = f * (g*h + 1, g*h - 1, h - g, h + g),

and conversely f, g, h can be read back off any velocity with xi1 != xi2.
The squared acceleration is alpha''^2 = 4 f^2 g' h'; curves with this
nonzero everywhere admit a pseudo arc-length parameter s with
alpha''^2 = +-1, obtained by integrating |alpha''^2|^(1/4).  In that
parametrization f collapses to omega / (2*sqrt(|g'h'|)) with omega = sign f,
leaving the canonical data (g, h, omega).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .algebra import Vec4
from .errors import (CancelledError, DegenerateError, DomainError,
                     ParameterError, RecoveryError)
from .funcs import ExprFn, Fn1, Mul, Num, TableFn, Var
from .quadrature import adaptive_quad, adaptive_quad_vec

__all__ = [
    "WeierstrassTriple", "CanonicalPair", "CurveJet", "Generator",
    "alpha_prime", "curve_jet", "triple_from_jet", "alpha_pp_sq",
    "is_nondegenerate", "natural_parameter", "invert_natural_parameter",
    "reparametrize_natural", "natural_deviation", "enneper_curve",
    "enneper_triple", "integrate_curve", "fgh_values",
]

EPS_DEG = 1e-10      # |alpha''^2| below this is treated as degenerate
EPS_REC = 1e-12      # relative guard for the xi1 - xi2 recovery denominator
QUAD_TOL = 1e-10     # absolute quadrature tolerance
INV_TOL = 1e-12      # parameter-inversion tolerance
DEFAULT_GRID_N = 2048


@dataclass(frozen=True)
class WeierstrassTriple:
    """Generating functions (f, g, h) of a null curve on [tmin, tmax]."""

    f: Fn1
    g: Fn1
    h: Fn1
    tmin: float
    tmax: float

    def __post_init__(self):
        if not (self.tmin < self.tmax):
            raise ParameterError("empty parameter interval")

    @property
    def domain(self) -> tuple[float, float]:
        return (self.tmin, self.tmax)

    def _check_t(self, t) -> None:
        if np.any(np.asarray(t) < self.tmin) or np.any(np.asarray(t) > self.tmax):
            raise DomainError(
                f"parameter outside [{self.tmin}, {self.tmax}]")


@dataclass(frozen=True)
class CanonicalPair:
    """Natural-parameter Weierstrass data (g, h, omega) on [smin, smax].

    The implied first function is omega / (2*sqrt(|g'h'|)).  Pairs produced
    by reparametrisation keep the inverse-parameter table and the source
    triple so the quality of the natural parameter can be audited.
    """

    g: Fn1
    h: Fn1
    omega: int
    smin: float
    smax: float
    t_of_s: Optional[TableFn] = field(default=None, compare=False)
    source: Optional[WeierstrassTriple] = field(default=None, compare=False)

    def __post_init__(self):
        if self.omega not in (-1, 1):
            raise ParameterError("omega must be +1 or -1")
        if not (self.smin < self.smax):
            raise ParameterError("empty parameter interval")

    @property
    def domain(self) -> tuple[float, float]:
        return (self.smin, self.smax)

    def _check_t(self, t) -> None:
        if np.any(np.asarray(t) < self.smin) or np.any(np.asarray(t) > self.smax):
            raise DomainError(
                f"parameter outside [{self.smin}, {self.smax}]")

    def f_value(self, t):
        """omega / (2*sqrt(|g'h'|)) at t (float or array)."""
        p = self.g.deriv(t) * self.h.deriv(t)
        ap = np.abs(p)
        if np.any(ap < EPS_DEG):
            raise DegenerateError("g'h' vanishes on a canonical pair")
        out = self.omega / (2.0 * np.sqrt(ap))
        return float(out) if np.ndim(t) == 0 else out


Generator = Union[WeierstrassTriple, CanonicalPair]


@dataclass(frozen=True)
class CurveJet:
    """First and second derivative of a null curve at one parameter value."""

    t: float
    alpha_p: Vec4
    alpha_pp: Vec4


def fgh_values(gen: Generator, t):
    """(f, g, h, f', g', h') at t; works for triples and canonical pairs."""
    if isinstance(gen, WeierstrassTriple):
        return (gen.f(t), gen.g(t), gen.h(t),
                gen.f.deriv(t), gen.g.deriv(t), gen.h.deriv(t))
    gp, hp = gen.g.deriv(t), gen.h.deriv(t)
    p = gp * hp
    ap = np.abs(p)
    if np.any(ap < EPS_DEG):
        raise DegenerateError("g'h' vanishes on a canonical pair")
    f = gen.omega / (2.0 * np.sqrt(ap))
    gpp, hpp = gen.g.second(t), gen.h.second(t)
    # d/dt of omega/2 * |p|^(-1/2)
    fp = -gen.omega * (gpp * hp + gp * hpp) * np.sign(p) / (4.0 * ap ** 1.5)
    return (f, gen.g(t), gen.h(t), fp, gp, hp)


def _w_vec(g, h):
    return (g * h + 1.0, g * h - 1.0, h - g, h + g)


def alpha_prime(gen: Generator, t: float) -> Vec4:
    """Velocity f*(gh+1, gh-1, h-g, h+g) at t; null by construction."""
    gen._check_t(t)
    if isinstance(gen, WeierstrassTriple):
        f, g, h = gen.f(t), gen.g(t), gen.h(t)
    else:
        f, g, h = gen.f_value(t), gen.g(t), gen.h(t)
    w1, w2, w3, w4 = _w_vec(g, h)
    return Vec4(f * w1, f * w2, f * w3, f * w4)


def _alpha_prime_rows(gen: Generator, ts: np.ndarray) -> np.ndarray:
    """Velocity components evaluated on an array of parameters, shape (4, n)."""
    if isinstance(gen, WeierstrassTriple):
        f, g, h = gen.f(ts), gen.g(ts), gen.h(ts)
    else:
        f, g, h = gen.f_value(ts), gen.g(ts), gen.h(ts)
    w1, w2, w3, w4 = _w_vec(g, h)
    return np.vstack([f * w1, f * w2, f * w3, f * w4])


def curve_jet(gen: Generator, t: float) -> CurveJet:
    """Jet (alpha', alpha'') at t from the generating functions."""
    gen._check_t(t)
    f, g, h, fp, gp, hp = fgh_values(gen, t)
    w = _w_vec(g, h)
    ghp = gp * h + g * hp
    wp = (ghp, ghp, hp - gp, hp + gp)
    alpha_p = Vec4(*(f * wi for wi in w))
    alpha_pp = Vec4(*(fp * wi + f * wpi for wi, wpi in zip(w, wp)))
    return CurveJet(t, alpha_p, alpha_pp)


def triple_from_jet(xi: Vec4) -> tuple[float, float, float]:
    """Pointwise recovery (f, g, h) from a velocity vector.

    Requires xi1 - xi2 away from zero; otherwise the curve must first be
    moved by a proper motion (see motions.plane_rotation_24).
    """
    den = xi.x1 - xi.x2
    scale = xi.norm_euclid()
    if abs(den) < EPS_REC * max(scale, 1e-300):
        raise RecoveryError(
            f"xi1 - xi2 = {den:g} is below the recovery guard; "
            "apply a proper motion first")
    return (0.5 * den, (xi.x4 - xi.x3) / den, (xi.x4 + xi.x3) / den)


def alpha_pp_sq(gen: Generator, t):
    """Squared acceleration 4 f^2 g' h' (float or array arguments)."""
    gen._check_t(t)
    if isinstance(gen, WeierstrassTriple):
        f = gen.f(t)
        out = 4.0 * f * f * gen.g.deriv(t) * gen.h.deriv(t)
    else:
        p = gen.g.deriv(t) * gen.h.deriv(t)
        out = np.sign(p)  # 4 f^2 g'h' with f = omega/(2 sqrt|g'h'|)
        if np.any(out == 0.0):
            raise DegenerateError("g'h' vanishes on a canonical pair")
    return float(out) if np.ndim(t) == 0 else out


def is_nondegenerate(gen: Generator, audit_n: int = 512):
    """(True, None) if alpha''^2 keeps one sign and never vanishes on the
    audit grid; otherwise (False, first failing parameter value)."""
    if audit_n < 2:
        raise ParameterError("audit_n must be >= 2")
    lo, hi = gen.domain
    ts = np.linspace(lo, hi, audit_n)
    vals = gen.g.deriv(ts) * gen.h.deriv(ts)
    if vals[0] == 0.0:
        return False, float(ts[0])
    ref = math.copysign(1.0, vals[0])
    for k in range(audit_n):
        v = vals[k]
        if v == 0.0:
            return False, float(ts[k])
        if math.copysign(1.0, v) != ref:
            # sign flip between ts[k-1] and ts[k]; report the crossing zone
            return False, float(0.5 * (ts[k - 1] + ts[k]))
    return True, None


def _poll_cancel(cancel) -> None:
    # cancel follows the threading.Event protocol (is_set)
    if cancel is not None and cancel.is_set():
        raise CancelledError("integration cancelled by caller")


def _natural_speed(tr: WeierstrassTriple, cancel=None):
    def speed(ts):
        _poll_cancel(cancel)
        a2 = alpha_pp_sq(tr, ts)
        a2 = np.asarray(a2, dtype=float)
        if np.any(np.abs(a2) < EPS_DEG):
            raise DegenerateError(
                "alpha''^2 vanishes on the integration path")
        return np.abs(a2) ** 0.25
    return speed


def natural_parameter(tr: WeierstrassTriple, t0: float, t: float,
                      cancel=None) -> float:
    """Pseudo arc-length s(t) = integral of |alpha''^2|^(1/4) from t0."""
    tr._check_t(t0)
    tr._check_t(t)
    return adaptive_quad(_natural_speed(tr, cancel), t0, t, tol=QUAD_TOL)


def invert_natural_parameter(tr: WeierstrassTriple, t0: float, s: float,
                             bracket: Optional[tuple[float, float]] = None) -> float:
    """Solve s(t) = s by bracketed Newton iteration (monotone s)."""
    lo, hi = bracket if bracket is not None else tr.domain
    speed = _natural_speed(tr)
    g_lo = natural_parameter(tr, t0, lo) - s
    g_hi = natural_parameter(tr, t0, hi) - s
    if g_lo > 0.0 or g_hi < 0.0:
        raise DomainError(f"s={s:g} outside the image of [{lo}, {hi}]")
    t = 0.5 * (lo + hi)
    for _ in range(100):
        gt = natural_parameter(tr, t0, t) - s
        if abs(gt) <= INV_TOL * max(1.0, abs(s)):
            return t
        if gt > 0.0:
            hi = t
        else:
            lo = t
        dt = gt / float(speed(np.array([t]))[0])
        t_new = t - dt
        if not (lo < t_new < hi):
            t_new = 0.5 * (lo + hi)  # Newton left the bracket: bisect
        t = t_new
    return t


def _panelwise_integrals(fn, ts: np.ndarray) -> np.ndarray:
    """One G7/K15 panel per consecutive pair of ts, evaluated in a single
    batched call; the rare panel whose error estimate misses 1e-12 is
    re-integrated adaptively."""
    from .quadrature import _GAUSS_ROWS, _WG, _WK, _XK
    mids = 0.5 * (ts[1:] + ts[:-1])
    halfs = 0.5 * (ts[1:] - ts[:-1])
    nodes = mids[:, None] + halfs[:, None] * _XK[None, :]
    vals = np.asarray(fn(nodes.ravel()), dtype=float).reshape(nodes.shape)
    k15 = halfs * (vals @ _WK)
    g7 = halfs * (vals[:, _GAUSS_ROWS] @ _WG)
    out = k15.copy()
    for k in np.flatnonzero(np.abs(k15 - g7) > 1e-12):
        out[k] = adaptive_quad(fn, float(ts[k]), float(ts[k + 1]), tol=1e-13)
    return out


def reparametrize_natural(tr: WeierstrassTriple,
                          grid_n: int = DEFAULT_GRID_N,
                          cancel=None) -> CanonicalPair:
    """Tabulate g, h against the pseudo arc-length parameter.

    The returned pair carries table-backed functions on [0, s(tmax)] plus the
    inverse-parameter table; omega is the sign of f.  Non-degeneracy is
    audited on the construction grid first.
    """
    ok, t_bad = is_nondegenerate(tr, grid_n + 1)
    if not ok:
        raise DegenerateError(f"g'h' vanishes near t = {t_bad:g}")
    ts = np.linspace(tr.tmin, tr.tmax, grid_n + 1)
    f_vals = np.asarray(tr.f(ts), dtype=float)
    if np.any(f_vals == 0.0) or np.any(np.sign(f_vals) != np.sign(f_vals[0])):
        raise DegenerateError("f vanishes or changes sign on the domain")

    speed = _natural_speed(tr, cancel)
    w = speed(ts)
    s = np.empty_like(ts)
    s[0] = 0.0
    increments = _panelwise_integrals(speed, ts)
    s[1:] = np.cumsum(increments)

    tp = 1.0 / w  # dt/ds along the curve
    g_tab = TableFn(s, tr.g(ts), tr.g.deriv(ts) * tp)
    h_tab = TableFn(s, tr.h(ts), tr.h.deriv(ts) * tp)
    t_tab = TableFn(s, ts, tp)
    omega = 1 if f_vals[0] > 0 else -1
    return CanonicalPair(g_tab, h_tab, omega, 0.0, float(s[-1]),
                         t_of_s=t_tab, source=tr)


def natural_deviation(pair: CanonicalPair, n: int = 1000):
    """Audit of |alpha''^2| = 1 for a canonical pair.

    For reparametrised pairs the squared acceleration is reconstructed from
    the source triple through the stored inverse-parameter table (the honest
    measurement of table and inversion error); pairs built directly from
    expressions satisfy the identity structurally.  Returns
    (max |" |alpha''^2| - 1 |", signs_preserved).
    """
    ss = np.linspace(pair.smin, pair.smax, n)
    sign_pair = np.sign(pair.g.deriv(ss) * pair.h.deriv(ss))
    if pair.t_of_s is not None and pair.source is not None:
        ts = pair.t_of_s(ss)
        tp = pair.t_of_s.deriv(ss)
        raw = np.asarray(alpha_pp_sq(pair.source, ts), dtype=float)
        val = np.abs(raw) * tp ** 4  # |alpha''^2| transported to the s chart
        signs_ok = bool(np.all(np.sign(raw) == sign_pair))
        return float(np.max(np.abs(val - 1.0))), signs_ok
    val = np.abs(np.sign(pair.g.deriv(ss) * pair.h.deriv(ss)))
    return float(np.max(np.abs(val - 1.0))), True


def enneper_curve(k: float, l: float, omega: int = 1,
                  domain: tuple[float, float] = (-5.0, 5.0)) -> CanonicalPair:
    """Canonical pair with linear data g = k*t, h = l*t (k, l nonzero).

    These curves are already parametrized naturally; alpha''^2 = sign(k*l).
    """
    if k == 0.0 or l == 0.0:
        raise ParameterError("k and l must be nonzero")
    g = ExprFn(Mul(Num(float(k)), Var()))
    h = ExprFn(Mul(Num(float(l)), Var()))
    return CanonicalPair(g, h, omega, float(domain[0]), float(domain[1]))


def enneper_triple(k: float, l: float, omega: int = 1,
                   domain: tuple[float, float] = (-5.0, 5.0)) -> WeierstrassTriple:
    """Same curve as enneper_curve but materialized as a triple
    (f constant = omega / (2*sqrt(|k*l|)))."""
    if k == 0.0 or l == 0.0:
        raise ParameterError("k and l must be nonzero")
    f = ExprFn(Num(omega / (2.0 * math.sqrt(abs(k * l)))))
    g = ExprFn(Mul(Num(float(k)), Var()))
    h = ExprFn(Mul(Num(float(l)), Var()))
    return WeierstrassTriple(f, g, h, float(domain[0]), float(domain[1]))


def integrate_curve(gen: Generator, t0: float, t: float,
                    tol: float = QUAD_TOL, cancel=None) -> Vec4:
    """Position alpha(t) with the convention alpha(t0) = 0."""
    gen._check_t(t0)
    gen._check_t(t)

    def rows(ts):
        _poll_cancel(cancel)
        return _alpha_prime_rows(gen, ts)

    comps = adaptive_quad_vec(rows, t0, t, tol=tol)
    return Vec4(*map(float, comps))
