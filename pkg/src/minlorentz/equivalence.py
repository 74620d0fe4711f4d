"""Quadruples of generating functions and the same-solution decision.

A quadruple (g1, h1, g2, h2) with g1, h1 functions of t1 and g2, h2 of t2
generates a curvature pair through the canonical formulas (for a chosen
sign delta).  Two quadruples produce the same pair exactly when they are
related by a common pair of real linear-fractional maps, one acting on the
g's and one on the h's.  The forward direction is checked numerically;
fit_mobius_witness is a three-point heuristic for the converse and is not a
decision procedure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (DegenerateDetError, DegenerateError, IncomparableError,
                     PoleError)
from .funcs import ExprFn, Fn1
from .motions import Mobius, _lft_expr
from .curvature import SING_REL

__all__ = [
    "Quadruple", "audit_quadruple", "mobius_apply_quadruple",
    "solution_fields", "same_solution", "fit_mobius_witness",
]

DEFAULT_TOL = 1e-8
ABS_FLOOR = 1e-12
MASK_MISMATCH_LIMIT = 0.10


@dataclass(frozen=True)
class Quadruple:
    """Generating quadruple with its parameter windows."""

    g1: Fn1
    h1: Fn1
    g2: Fn1
    h2: Fn1
    window1: tuple[float, float]
    window2: tuple[float, float]


def audit_quadruple(q: Quadruple, n: int = 64) -> None:
    """Check g'h' != 0 per curve and g1 != g2, h1 != h2 across the windows.

    Raises DegenerateError naming the first violated condition.
    """
    t1 = np.linspace(q.window1[0], q.window1[1], n)
    t2 = np.linspace(q.window2[0], q.window2[1], n)
    for label, fn_g, fn_h, ts in (("1", q.g1, q.h1, t1), ("2", q.g2, q.h2, t2)):
        p = np.asarray(fn_g.deriv(ts) * fn_h.deriv(ts), dtype=float)
        if np.any(p == 0.0) or np.any(np.sign(p) != np.sign(p[0])):
            k = int(np.argmax((p == 0.0) | (np.sign(p) != np.sign(p[0]))))
            raise DegenerateError(
                f"g{label}'h{label}' vanishes near t = {ts[k]:g}")
    g_diff = np.asarray(q.g1(t1), dtype=float)[:, None] - \
        np.asarray(q.g2(t2), dtype=float)[None, :]
    h_diff = np.asarray(q.h1(t1), dtype=float)[:, None] - \
        np.asarray(q.h2(t2), dtype=float)[None, :]
    for label, diff in (("g1 = g2", g_diff), ("h1 = h2", h_diff)):
        if np.any(diff == 0.0) or np.any(np.sign(diff) != np.sign(diff.flat[0])):
            k = int(np.argmax((diff == 0.0)
                              | (np.sign(diff) != np.sign(diff.flat[0]))))
            i, j = divmod(k, diff.shape[1])
            raise DegenerateError(
                f"{label} near (t1, t2) = ({t1[i]:g}, {t2[j]:g})")


def _transform_fn(fn: Fn1, m: Mobius, window: tuple[float, float],
                  label: str, audit_n: int) -> ExprFn:
    if not isinstance(fn, ExprFn):
        raise DegenerateError(
            "quadruple transforms need expression-backed functions")
    ts = np.linspace(window[0], window[1], audit_n)
    den = m.c * np.asarray(fn(ts), dtype=float) + m.d
    if den[0] == 0.0:
        raise PoleError(f"pole of the map of {label} at t = {ts[0]:g}")
    bad = np.flatnonzero((den == 0.0) | (np.sign(den) != np.sign(den[0])))
    if bad.size:
        raise PoleError(f"pole of the map of {label} near t = {ts[bad[0]]:g}")
    return ExprFn(_lft_expr(m, fn.expr))


def mobius_apply_quadruple(q: Quadruple, m1: Mobius, m2: Mobius,
                           audit_n: int = 256) -> Quadruple:
    """Apply (a1 g + b1)/(c1 g + d1) to both g's and the m2 map to both h's.

    Scaling all coefficients of either map leaves the output unchanged
    because Mobius stores determinant-normalised coefficients.
    """
    if m1.det == 0.0 or m2.det == 0.0:
        raise DegenerateDetError("zero-determinant linear-fractional map")
    out = Quadruple(
        _transform_fn(q.g1, m1, q.window1, "g1", audit_n),
        _transform_fn(q.h1, m2, q.window1, "h1", audit_n),
        _transform_fn(q.g2, m1, q.window2, "g2", audit_n),
        _transform_fn(q.h2, m2, q.window2, "h2", audit_n),
        q.window1, q.window2,
    )
    audit_quadruple(out)
    return out


def solution_fields(q: Quadruple, T1: np.ndarray, T2: np.ndarray,
                    delta: int = -1):
    """(K, kappa, valid) generated by the quadruple for the given delta."""
    g1, h1 = np.asarray(q.g1(T1), float), np.asarray(q.h1(T1), float)
    g2, h2 = np.asarray(q.g2(T2), float), np.asarray(q.h2(T2), float)
    g1p, h1p = q.g1.deriv(T1), q.h1.deriv(T1)
    g2p, h2p = q.g2.deriv(T2), q.h2.deriv(T2)
    dg, dh = g1 - g2, h1 - h2
    P = dg * dh
    prod = g1p * h1p * g2p * h2p
    scale = float(np.max(np.abs(P))) if P.size else 0.0
    valid = (np.abs(P) > SING_REL * max(scale, 1e-300)) & (prod != 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        pref = -delta * 8.0 * np.sqrt(np.abs(prod)) / np.abs(P)
        A = g1p * g2p / (dg * dg)
        B = h1p * h2p / (dh * dh)
        K = pref * (A + B)
        kappa = pref * (A - B)
    valid &= np.isfinite(K) & np.isfinite(kappa)
    return K, kappa, valid


def same_solution(qa: Quadruple, qb: Quadruple, grid_n: int = 24,
                  tol: float = DEFAULT_TOL, delta: int = -1) -> bool:
    """True iff both quadruples generate the same (K, kappa) field.

    Fields are compared on a grid over the intersection of the windows,
    entrywise within tol relative (absolute floor 1e-12).  Raises
    IncomparableError when the valid masks disagree on more than 10 percent
    of the points.
    """
    w1 = (max(qa.window1[0], qb.window1[0]), min(qa.window1[1], qb.window1[1]))
    w2 = (max(qa.window2[0], qb.window2[0]), min(qa.window2[1], qb.window2[1]))
    if w1[0] >= w1[1] or w2[0] >= w2[1]:
        raise IncomparableError("parameter windows do not overlap")
    T1 = np.linspace(w1[0], w1[1], grid_n)[:, None]
    T2 = np.linspace(w2[0], w2[1], grid_n)[None, :]
    T1 = np.broadcast_to(T1, (grid_n, grid_n))
    T2 = np.broadcast_to(T2, (grid_n, grid_n))
    Ka, ka, va = solution_fields(qa, T1, T2, delta)
    Kb, kb, vb = solution_fields(qb, T1, T2, delta)
    if np.mean(va != vb) > MASK_MISMATCH_LIMIT:
        raise IncomparableError("valid masks differ on more than 10% of points")
    both = va & vb
    if not np.any(both):
        raise IncomparableError("no commonly valid points")
    dK = np.abs(Ka - Kb)[both]
    dk = np.abs(ka - kb)[both]
    limK = np.maximum(ABS_FLOOR, tol * np.abs(Ka[both]))
    limk = np.maximum(ABS_FLOOR, tol * np.abs(ka[both]))
    return bool(np.all(dK <= limK) and np.all(dk <= limk))


def fit_mobius_witness(xs, ys) -> Mobius:
    """Heuristic: the linear-fractional map sending xs[i] -> ys[i], i = 0..2.

    Three exact correspondences determine the map; callers should check it
    on extra points.  This is a diagnostic aid, not a converse decision.
    """
    xs = [float(x) for x in xs]
    ys = [float(y) for y in ys]
    if len(xs) != 3 or len(ys) != 3:
        raise ValueError("exactly three correspondences required")
    # rows of a*x + b - c*x*y - d*y = 0
    M = np.array([[x, 1.0, -x * y, -y] for x, y in zip(xs, ys)])
    _, _, vh = np.linalg.svd(M)
    a, b, c, d = vh[-1]
    if abs(a * d - b * c) < 1e-14:
        raise DegenerateDetError("correspondences do not determine a map")
    return Mobius.normalized(float(a), float(b), float(c), float(d))
