"""Minimal Lorentz surfaces synthesised from pairs of null curves.

The position is x(u, v) = (alpha1(u+v) + alpha2(u-v)) / 2, which is
hyperbolic harmonic by construction; the isotropic coordinates are
t1 = u + v, t2 = u - v.  The induced metric coefficient is
E = <alpha1', alpha2'> / 2 and the surface is classified by the causal
characters of the two accelerations.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import DVec4, Vec4, inner
from .curvature import CurvaturePair, curvature_canonical, \
    curvature_from_jets, curvature_from_triples
from .errors import DegenerateError, EmptyGridError, NotGeneralTypeError
from .nullcurve import (CanonicalPair, Generator, WeierstrassTriple,
                        alpha_pp_sq, alpha_prime, curve_jet, integrate_curve,
                        is_nondegenerate)

__all__ = [
    "SurfaceType", "MinimalSurface", "SurfaceSample", "SurfaceGrid",
    "position", "induced_E", "classify", "gauss_map", "sample_grid",
    "write_surface_csv", "write_surface_obj",
]

EPS_E_REL = 1e-9   # |E| below this times the grid scale flags a singular sample
CSV_HEADER = "u,v,t1,t2,x1,x2,x3,x4,E,K,kappa,type,singular"


class SurfaceType(enum.Enum):
    FIRST = "first"
    SECOND = "second"
    THIRD = "third"
    NOT_GENERAL = "not_general"


@dataclass(frozen=True)
class MinimalSurface:
    """Pair of null-curve generators; immutable after construction.

    base1/base2 fix the additive constants: alpha_i(base_i) = 0.  When a
    third-type pair arrives with the timelike acceleration first, make()
    swaps the generators so the spacelike one is number one and records it.
    """

    gen1: Generator
    gen2: Generator
    base1: float
    base2: float
    renumbered: bool = False

    @staticmethod
    def make(gen1: Generator, gen2: Generator,
             base1: Optional[float] = None,
             base2: Optional[float] = None) -> "MinimalSurface":
        def default_base(gen):
            lo, hi = gen.domain
            return 0.0 if lo <= 0.0 <= hi else lo

        b1 = default_base(gen1) if base1 is None else base1
        b2 = default_base(gen2) if base2 is None else base2
        s1 = _acc_sign(gen1)
        s2 = _acc_sign(gen2)
        if s1 < 0 < s2:  # third type arrives swapped
            return MinimalSurface(gen2, gen1, b2, b1, renumbered=True)
        return MinimalSurface(gen1, gen2, b1, b2)

    def isotropic(self, u: float, v: float) -> tuple[float, float]:
        return u + v, u - v


def _acc_sign(gen: Generator) -> int:
    """Sign of alpha''^2, audited for constancy on the generator's window."""
    ok, t_bad = is_nondegenerate(gen, 512)
    if not ok:
        raise NotGeneralTypeError(
            f"alpha''^2 vanishes near parameter {t_bad:g}")
    lo, hi = gen.domain
    return 1 if alpha_pp_sq(gen, 0.5 * (lo + hi)) > 0 else -1


def position(S: MinimalSurface, u: float, v: float) -> Vec4:
    """x(u, v) = (alpha1(t1) + alpha2(t2)) / 2 with alpha_i(base_i) = 0."""
    t1, t2 = S.isotropic(u, v)
    a1 = integrate_curve(S.gen1, S.base1, t1)
    a2 = integrate_curve(S.gen2, S.base2, t2)
    return (a1 + a2).scale(0.5)


def induced_E(S: MinimalSurface, u: float, v: float) -> float:
    """Metric coefficient E = <alpha1', alpha2'> / 2; raises when it collapses."""
    t1, t2 = S.isotropic(u, v)
    a1p = alpha_prime(S.gen1, t1)
    a2p = alpha_prime(S.gen2, t2)
    E = 0.5 * inner(a1p, a2p)
    scale = a1p.norm_euclid() * a2p.norm_euclid()
    if abs(E) <= 1e-12 * max(scale, 1e-300):
        raise DegenerateError(f"E = {E:g} vanishes at (u, v) = ({u:g}, {v:g})")
    return E


def classify(S: MinimalSurface) -> SurfaceType:
    """First/second/third type from the signs of the squared accelerations."""
    s1 = _acc_sign(S.gen1)
    s2 = _acc_sign(S.gen2)
    if s1 > 0 and s2 > 0:
        return SurfaceType.FIRST
    if s1 < 0 and s2 < 0:
        return SurfaceType.SECOND
    return SurfaceType.THIRD


def gauss_map(S: MinimalSurface, u: float, v: float) -> DVec4:
    """Double-valued tangent direction alpha1' qbar + alpha2' q."""
    t1, t2 = S.isotropic(u, v)
    return DVec4.from_null_parts(alpha_prime(S.gen1, t1),
                                 alpha_prime(S.gen2, t2))


@dataclass(frozen=True)
class SurfaceSample:
    u: float
    v: float
    t1: float
    t2: float
    x: Vec4
    E: float
    K: float            # nan on singular samples
    kappa: float        # nan on singular samples
    surface_type: SurfaceType
    singular: bool


@dataclass(frozen=True)
class SurfaceGrid:
    samples: list[SurfaceSample]
    nu: int
    nv: int
    surface_type: SurfaceType
    singular_count: int


def _curvature_at(S: MinimalSurface, t1: float, t2: float) -> CurvaturePair:
    g1, g2 = S.gen1, S.gen2
    if isinstance(g1, CanonicalPair) and isinstance(g2, CanonicalPair):
        return curvature_canonical(g1, g2, t1, t2)
    if isinstance(g1, WeierstrassTriple) and isinstance(g2, WeierstrassTriple):
        return curvature_from_triples(g1, g2, t1, t2)
    return curvature_from_jets(curve_jet(g1, t1), curve_jet(g2, t2))


def sample_grid(S: MinimalSurface, u_range: tuple[float, float],
                v_range: tuple[float, float], nu: int, nv: int,
                threads: int = 1) -> SurfaceGrid:
    """Row-major samples with positions, E and curvatures.

    Samples with |E| < 1e-9 * max|E| are flagged singular; their curvatures
    are recorded as nan and they are excluded from the singular statistics.
    """
    if nu < 1 or nv < 1:
        raise EmptyGridError("grid needs at least one point per direction")
    us = np.linspace(u_range[0], u_range[1], nu) if nu > 1 \
        else np.array([u_range[0]])
    vs = np.linspace(v_range[0], v_range[1], nv) if nv > 1 \
        else np.array([v_range[0]])

    pts = [(float(u), float(v)) for u in us for v in vs]
    t1s = [u + v for u, v in pts]
    t2s = [u - v for u, v in pts]

    # one integral per distinct parameter value; value depends only on the
    # parameter, so the thread count cannot change any output byte
    alpha1 = _positions_for(S.gen1, S.base1, sorted(set(t1s)), threads)
    alpha2 = _positions_for(S.gen2, S.base2, sorted(set(t2s)), threads)

    a1p = [alpha_prime(S.gen1, t) for t in t1s]
    a2p = [alpha_prime(S.gen2, t) for t in t2s]
    E = np.array([0.5 * inner(p, q) for p, q in zip(a1p, a2p)])
    # flag relative to the grid's E scale, and also against the local
    # velocity magnitudes so fully degenerate grids cannot slip through
    norms = np.array([p.norm_euclid() * q.norm_euclid()
                      for p, q in zip(a1p, a2p)])
    scale = float(np.max(np.abs(E))) if E.size else 0.0
    singular = (np.abs(E) < EPS_E_REL * scale) | \
        (np.abs(E) <= 1e-12 * np.maximum(norms, 1e-300))
    if bool(np.all(singular)):
        raise EmptyGridError("all grid points are singular")

    stype = classify(S)
    samples = []
    for i, (u, v) in enumerate(pts):
        t1, t2 = t1s[i], t2s[i]
        x = (alpha1[t1] + alpha2[t2]).scale(0.5)
        if singular[i]:
            K = kappa = math.nan
        else:
            pair = _curvature_at(S, t1, t2)
            K, kappa = pair.K, pair.kappa
        samples.append(SurfaceSample(u, v, t1, t2, x, float(E[i]),
                                     K, kappa, stype, bool(singular[i])))
    return SurfaceGrid(samples, nu, nv, stype, int(np.sum(singular)))


def _positions_for(gen: Generator, base: float, ts: list[float],
                   threads: int) -> dict[float, Vec4]:
    def one(t: float) -> Vec4:
        return integrate_curve(gen, base, t)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            vals = list(pool.map(one, ts))
    else:
        vals = [one(t) for t in ts]
    return dict(zip(ts, vals))


def _fmt(x: float) -> str:
    if math.isnan(x):
        return "nan"
    return repr(x)


def write_surface_csv(grid: SurfaceGrid, path: str) -> None:
    """CSV export; floats use shortest round-trip decimals."""
    lines = [CSV_HEADER]
    for s in grid.samples:
        lines.append(",".join([
            _fmt(s.u), _fmt(s.v), _fmt(s.t1), _fmt(s.t2),
            _fmt(s.x.x1), _fmt(s.x.x2), _fmt(s.x.x3), _fmt(s.x.x4),
            _fmt(s.E), _fmt(s.K), _fmt(s.kappa),
            s.surface_type.value, "1" if s.singular else "0",
        ]))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


_AXIS_INDEX = {"x1": 0, "x2": 1, "x3": 2, "x4": 3}


def write_surface_obj(grid: SurfaceGrid, path: str, drop_axis: str = "x3") -> None:
    """Triangulated OBJ of the 3-space projection dropping one coordinate.

    Cells touching a singular sample are skipped.
    """
    if drop_axis not in _AXIS_INDEX:
        raise ValueError(f"drop_axis must be one of {sorted(_AXIS_INDEX)}")
    drop = _AXIS_INDEX[drop_axis]
    keep = [k for k in range(4) if k != drop]
    lines = [f"# projection: dropped {drop_axis}"]
    for s in grid.samples:
        c = s.x.components()
        lines.append("v " + " ".join(_fmt(c[k]) for k in keep))
    nv = grid.nv
    sing = [s.singular for s in grid.samples]
    for i in range(grid.nu - 1):
        for j in range(nv - 1):
            a = i * nv + j
            b = a + 1
            c = a + nv
            d = c + 1
            if sing[a] or sing[b] or sing[c] or sing[d]:
                continue
            lines.append(f"f {a + 1} {c + 1} {d + 1}")
            lines.append(f"f {a + 1} {d + 1} {b + 1}")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
