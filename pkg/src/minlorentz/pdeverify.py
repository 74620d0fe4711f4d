"""Finite-difference verification of the natural-equation system.

In canonical isothermal coordinates the curvature pair (K, kappa) of a
minimal surface of general type satisfies

    |K^2 - kappa^2|^(1/4) * L ln|K^2 - kappa^2|        = delta * 8 K,
    |K^2 - kappa^2|^(1/4) * L ln|(K + kappa)/(K - kappa)| = delta * 4 kappa,

with L the hyperbolic Laplacian d^2/du^2 - d^2/dv^2 and delta the sign of E.
Second-order central stencils make the residual of an exact solution pure
h^2 truncation, which the convergence checks rely on; points where a log
argument degenerates are masked, never clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curvature import canonical_fields
from .errors import (DegenerateError, NotCanonicalError, StencilError)
from .nullcurve import CanonicalPair
from .surface import MinimalSurface

__all__ = [
    "ScalarGrid", "ResidualReport", "hyperbolic_laplacian",
    "natural_eq_residuals", "verify_surface", "grids_from_surface",
    "write_residual_csv",
]


@dataclass(frozen=True)
class ScalarGrid:
    """Uniformly spaced scalar field on a (u, v) rectangle with a validity mask."""

    u0: float
    v0: float
    du: float
    dv: float
    values: np.ndarray          # shape (nu, nv), axis 0 is u
    mask: np.ndarray            # True where the value is usable

    def __post_init__(self):
        if self.du <= 0.0 or self.dv <= 0.0:
            raise ValueError("grid steps must be positive")
        if self.values.ndim != 2 or self.values.shape[0] < 5 \
                or self.values.shape[1] < 5:
            raise ValueError("grid needs at least 5 points per direction")
        if self.mask.shape != self.values.shape:
            raise ValueError("mask shape must match values")

    @property
    def nu(self) -> int:
        return self.values.shape[0]

    @property
    def nv(self) -> int:
        return self.values.shape[1]

    @staticmethod
    def full(u0: float, v0: float, du: float, dv: float,
             values: np.ndarray) -> "ScalarGrid":
        values = np.asarray(values, dtype=float)
        return ScalarGrid(u0, v0, du, dv, values,
                          np.ones(values.shape, dtype=bool))


@dataclass(frozen=True)
class ResidualReport:
    r1_max: float
    r1_rms: float
    r2_max: float
    r2_rms: float
    interior_count: int
    delta: int
    masked_count: int

    def lines(self) -> list[str]:
        return [
            f"r1_max={self.r1_max!r}",
            f"r1_rms={self.r1_rms!r}",
            f"r2_max={self.r2_max!r}",
            f"r2_rms={self.r2_rms!r}",
            f"delta={self.delta}",
            f"interior={self.interior_count}",
            f"masked={self.masked_count}",
        ]


def hyperbolic_laplacian(g: ScalarGrid, i: int, j: int) -> float:
    """Central second-difference d^2/du^2 - d^2/dv^2 at an interior point."""
    if not (1 <= i < g.nu - 1 and 1 <= j < g.nv - 1):
        raise StencilError(f"({i}, {j}) has no full 5-point stencil")
    m = g.mask
    if not (m[i, j] and m[i + 1, j] and m[i - 1, j]
            and m[i, j + 1] and m[i, j - 1]):
        raise StencilError(f"stencil at ({i}, {j}) touches a masked point")
    v = g.values
    return ((v[i + 1, j] - 2.0 * v[i, j] + v[i - 1, j]) / g.du ** 2
            - (v[i, j + 1] - 2.0 * v[i, j] + v[i, j - 1]) / g.dv ** 2)


def _lap_field(v: np.ndarray, du: float, dv: float) -> np.ndarray:
    return ((v[2:, 1:-1] - 2.0 * v[1:-1, 1:-1] + v[:-2, 1:-1]) / du ** 2
            - (v[1:-1, 2:] - 2.0 * v[1:-1, 1:-1] + v[1:-1, :-2]) / dv ** 2)


def natural_eq_residuals(K: ScalarGrid, kappa: ScalarGrid,
                         delta: int) -> ResidualReport:
    """Residuals of both natural equations over the usable interior.

    Points where |K^2-kappa^2| or |K -+ kappa| fall under the logarithm guard
    1e-8 * (1 + K^2 + kappa^2) are masked; statistics cover interior points
    whose whole stencil is unmasked.
    """
    if (K.du, K.dv, K.u0, K.v0, K.values.shape) != \
            (kappa.du, kappa.dv, kappa.u0, kappa.v0, kappa.values.shape):
        raise ValueError("K and kappa grids must be congruent")
    Kv, kv = K.values, kappa.values
    D = Kv * Kv - kv * kv
    eps = 1e-8 * (1.0 + Kv * Kv + kv * kv)
    ok = (K.mask & kappa.mask
          & (np.abs(D) >= eps)
          & (np.abs(Kv - kv) >= eps) & (np.abs(Kv + kv) >= eps))
    masked_count = int(np.sum((K.mask & kappa.mask) & ~ok))

    # masked entries become log(1) = 0; the interior filter drops any stencil
    # that touches them, so the placeholder value never reaches a statistic
    lnD = np.log(np.where(ok, np.abs(D), 1.0))
    lnR = np.log(np.where(ok, np.abs(Kv + kv), 1.0)
                 / np.where(ok, np.abs(Kv - kv), 1.0))

    interior_ok = (ok[1:-1, 1:-1] & ok[2:, 1:-1] & ok[:-2, 1:-1]
                   & ok[1:-1, 2:] & ok[1:-1, :-2])
    if not np.any(interior_ok):
        raise DegenerateError("every interior point is masked")

    q = np.abs(D[1:-1, 1:-1]) ** 0.25
    r1 = q * _lap_field(lnD, K.du, K.dv) - delta * 8.0 * Kv[1:-1, 1:-1]
    r2 = q * _lap_field(lnR, K.du, K.dv) - delta * 4.0 * kv[1:-1, 1:-1]
    r1 = r1[interior_ok]
    r2 = r2[interior_ok]
    return ResidualReport(
        r1_max=float(np.max(np.abs(r1))),
        r1_rms=float(math.sqrt(float(np.mean(r1 * r1)))),
        r2_max=float(np.max(np.abs(r2))),
        r2_rms=float(math.sqrt(float(np.mean(r2 * r2)))),
        interior_count=int(np.sum(interior_ok)),
        delta=int(delta),
        masked_count=masked_count,
    )


def grids_from_surface(S: MinimalSurface, region: tuple[float, float, float, float],
                       h: float) -> tuple[ScalarGrid, ScalarGrid, int]:
    """Canonical curvature grids of a surface over a (u, v) region.

    Returns (K, kappa, delta); delta is read off the sign of E and points
    whose local sign disagrees (other components) are masked.
    """
    if not (isinstance(S.gen1, CanonicalPair) and isinstance(S.gen2, CanonicalPair)):
        raise NotCanonicalError(
            "verification needs natural-parameter generators")
    u0, u1, v0, v1 = region
    nu = int(round((u1 - u0) / h)) + 1
    nv = int(round((v1 - v0) / h)) + 1
    if nu < 5 or nv < 5:
        raise ValueError("region too small for the stencil at this step")
    U = u0 + np.arange(nu)[:, None] * h
    V = v0 + np.arange(nv)[None, :] * h
    T1 = U + V
    T2 = U - V
    Kv, kv, E, delta_arr, valid = canonical_fields(S.gen1, S.gen2, T1, T2)
    if not np.any(valid):
        raise DegenerateError("E vanishes on the whole verification grid")
    first = np.argmax(valid)                      # first valid flat index
    delta = int(delta_arr.flat[first])
    valid = valid & (delta_arr == delta)
    return (ScalarGrid(u0, v0, h, h, Kv, valid),
            ScalarGrid(u0, v0, h, h, kv, valid), delta)


def verify_surface(S: MinimalSurface, region: tuple[float, float, float, float],
                   h: float, tol: float) -> tuple[bool, ResidualReport]:
    """Build canonical curvature grids and test both residual maxima <= tol."""
    Kg, kg, delta = grids_from_surface(S, region, h)
    report = natural_eq_residuals(Kg, kg, delta)
    return (report.r1_max <= tol and report.r2_max <= tol), report


def write_residual_csv(K: ScalarGrid, kappa: ScalarGrid, delta: int,
                       path: str) -> None:
    """Per-point residual export for the usable interior."""
    Kv, kv = K.values, kappa.values
    D = Kv * Kv - kv * kv
    eps = 1e-8 * (1.0 + Kv * Kv + kv * kv)
    ok = (K.mask & kappa.mask & (np.abs(D) >= eps)
          & (np.abs(Kv - kv) >= eps) & (np.abs(Kv + kv) >= eps))
    lines = ["u,v,r1,r2"]
    for i in range(1, K.nu - 1):
        for j in range(1, K.nv - 1):
            if not (ok[i, j] and ok[i + 1, j] and ok[i - 1, j]
                    and ok[i, j + 1] and ok[i, j - 1]):
                continue
            u = K.u0 + i * K.du
            v = K.v0 + j * K.dv
            q = abs(D[i, j]) ** 0.25
            lap1 = ((math.log(abs(D[i + 1, j])) - 2 * math.log(abs(D[i, j]))
                     + math.log(abs(D[i - 1, j]))) / K.du ** 2
                    - (math.log(abs(D[i, j + 1])) - 2 * math.log(abs(D[i, j]))
                       + math.log(abs(D[i, j - 1]))) / K.dv ** 2)
            def lr(ii, jj):
                return math.log(abs((Kv[ii, jj] + kv[ii, jj])
                                    / (Kv[ii, jj] - kv[ii, jj])))
            lap2 = ((lr(i + 1, j) - 2 * lr(i, j) + lr(i - 1, j)) / K.du ** 2
                    - (lr(i, j + 1) - 2 * lr(i, j) + lr(i, j - 1)) / K.dv ** 2)
            r1 = q * lap1 - delta * 8.0 * Kv[i, j]
            r2 = q * lap2 - delta * 4.0 * kv[i, j]
            lines.append(f"{u!r},{v!r},{r1!r},{r2!r}")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
