"""Command-line front end.

Subcommands: example, surface, curvature, verify, equiv, motion, reparam.
All file outputs are byte-deterministic for identical configuration: floats
are printed as shortest round-trip decimals and reductions run in a fixed
order.  Exit codes: 0 success, 2 audit/configuration failure, 3 verification
failure, 1 unexpected error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .curvature import (canonical_fields, curvature_canonical,
                        curvature_from_jets, curvature_from_triples)
from .equivalence import Quadruple, audit_quadruple, mobius_apply_quadruple, \
    same_solution
from .errors import (DegenerateDetError, DegenerateError, DomainError,
                     EmptyGridError, IncomparableError, MinLorentzError,
                     NotCanonicalError, NotGeneralTypeError, NotSL2Error,
                     ParameterError, PoleError, QuadratureError,
                     RecoveryError, SingularError, StencilError)
from .funcs import ExprFn, ExprSyntaxError
from .motions import Mat2, Mobius, apply_motion, motion_from_spinors
from .nullcurve import (CanonicalPair, WeierstrassTriple, curve_jet,
                        enneper_curve, natural_deviation,
                        reparametrize_natural)
from .pdeverify import ScalarGrid, natural_eq_residuals, verify_surface, \
    write_residual_csv
from .surface import (MinimalSurface, sample_grid, write_surface_csv,
                      write_surface_obj)
from .algebra import Vec4

AUDIT_EXIT = 2
VERIFY_EXIT = 3

_AUDIT_ERRORS = (DegenerateError, PoleError, ParameterError, DomainError,
                 NotGeneralTypeError, EmptyGridError, DegenerateDetError,
                 NotSL2Error, ExprSyntaxError, RecoveryError, SingularError,
                 NotCanonicalError, StencilError, IncomparableError,
                 QuadratureError, ValueError)


@dataclass(frozen=True)
class RunConfig:
    """Resolved options of a grid-producing run; validated before use."""

    subcommand: str
    region: tuple[float, float, float, float]
    h: float
    tol: float
    nu: int
    nv: int
    out_dir: str
    drop_axis: str
    threads: int

    def validate(self) -> "RunConfig":
        u0, u1, v0, v1 = self.region
        for x in (u0, u1, v0, v1, self.h, self.tol):
            if not math.isfinite(x):
                raise ParameterError("non-finite numeric parameter")
        if not (u0 < u1 and v0 < v1):
            raise ParameterError("empty region")
        if self.h <= 0.0 or self.tol <= 0.0:
            raise ParameterError("steps and tolerances must be positive")
        if self.nu < 1 or self.nv < 1 or self.threads < 1:
            raise ParameterError("counts must be positive")
        return self


def _floats(text: str, n: int, what: str) -> tuple[float, ...]:
    parts = text.split(",")
    if len(parts) != n:
        raise ParameterError(f"{what} needs {n} comma-separated reals")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise ParameterError(f"bad {what}: {exc}") from exc


def _fmt(x: float) -> str:
    return "nan" if math.isnan(x) else repr(float(x))


# --------------------------------------------------------------------------
# example surfaces
# --------------------------------------------------------------------------

_EXAMPLE_REGIONS = {
    "m1": (0.35, 0.65, 0.35, 0.65),
    "m2": (0.35, 0.65, 0.35, 0.65),
    "m3": (0.8, 1.2, -0.2, 0.2),
    "enneper": (0.35, 0.65, -0.15, 0.15),
}
_EXAMPLE_KL = {
    # (k1, l1, omega1), (k2, l2, omega2); omegas make E < 0 on the region
    "m1": ((2.0, 1.0, 1), (1.0, 2.0, 1)),
    "m2": ((2.0, -1.0, 1), (1.0, -2.0, -1)),
    "m3": ((2.0, 1.0, 1), (1.0, -2.0, 1)),
}


def _windows_for_region(region, h):
    u0, u1, v0, v1 = region
    pad = 2.0 * h + 1e-6
    return ((u0 + v0 - pad, u1 + v1 + pad), (u0 - v1 - pad, u1 - v0 + pad))


def _inset_region(region):
    u0, u1, v0, v1 = region
    iu, iv = 0.25 * (u1 - u0), 0.25 * (v1 - v0)
    return (u0 + iu, u1 - iu, v0 + iv, v1 - iv)


def _audit_surface_region(S: MinimalSurface, region, n: int = 65) -> None:
    """Reject regions where E vanishes or changes sign (odd n hits midlines)."""
    u0, u1, v0, v1 = region
    U = np.linspace(u0, u1, n)[:, None]
    V = np.linspace(v0, v1, n)[None, :]
    T1 = np.broadcast_to(U + V, (n, n))
    T2 = np.broadcast_to(U - V, (n, n))
    if isinstance(S.gen1, CanonicalPair) and isinstance(S.gen2, CanonicalPair):
        _, _, E, _, valid = canonical_fields(S.gen1, S.gen2, T1, T2)
    else:
        E = np.empty((n, n))
        from .algebra import inner
        from .nullcurve import alpha_prime
        for i in range(n):
            for j in range(n):
                E[i, j] = 0.5 * inner(alpha_prime(S.gen1, float(T1[i, j])),
                                      alpha_prime(S.gen2, float(T2[i, j])))
        valid = E != 0.0
    if np.any(E == 0.0) or np.any(~valid):
        k = int(np.argmax((E == 0.0) | (~valid)))
        i, j = divmod(k, n)
        raise DegenerateError(
            f"E vanishes at (u, v) = ({float(U[i, 0]):g}, {float(V[0, j]):g})")
    if np.any(np.sign(E) != np.sign(E.flat[0])):
        k = int(np.argmax(np.sign(E) != np.sign(E.flat[0])))
        i, j = divmod(k, n)
        raise DegenerateError(
            f"E changes sign at (u, v) = ({float(U[i, 0]):g}, {float(V[0, j]):g})")


def _write_curvature_csv(S: MinimalSurface, region, h: float, path: str) -> None:
    u0, u1, v0, v1 = region
    nu = int(round((u1 - u0) / h)) + 1
    nv = int(round((v1 - v0) / h)) + 1
    U = u0 + np.arange(nu)[:, None] * h
    V = v0 + np.arange(nv)[None, :] * h
    T1 = np.broadcast_to(U + V, (nu, nv))
    T2 = np.broadcast_to(U - V, (nu, nv))
    K, kap, _, _, valid = canonical_fields(S.gen1, S.gen2, T1, T2)
    lines = ["u,v,t1,t2,K,kappa"]
    for i in range(nu):
        ui = float(U[i, 0])
        for j in range(nv):
            vj = float(V[0, j])
            if valid[i, j]:
                kv, cv = float(K[i, j]), float(kap[i, j])
            else:
                kv = cv = math.nan
            lines.append(",".join([_fmt(ui), _fmt(vj),
                                   _fmt(ui + vj), _fmt(ui - vj),
                                   _fmt(kv), _fmt(cv)]))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def cmd_example(args) -> int:
    region = _floats(args.region, 4, "--region") if args.region \
        else _EXAMPLE_REGIONS[args.name]
    cfg = RunConfig("example", region, args.h, args.tol, args.nu, args.nv,
                    args.out_dir, "x3", args.threads).validate()
    w1, w2 = _windows_for_region(cfg.region, cfg.h)

    if args.name == "enneper":
        for p in (args.k1, args.l1, args.k2, args.l2):
            if p is None:
                raise ParameterError(
                    "enneper needs --k1 --l1 --k2 --l2")
        gen1 = enneper_curve(args.k1, args.l1, 1, w1)
        # orient the second curve so E < 0 at the region centre
        u0, u1, v0, v1 = cfg.region
        tc1, tc2 = 0.5 * (u0 + u1) + 0.5 * (v0 + v1), \
            0.5 * (u0 + u1) - 0.5 * (v0 + v1)
        p_centre = (args.k1 * tc1 - args.k2 * tc2) * \
            (args.l1 * tc1 - args.l2 * tc2)
        omega2 = 1 if p_centre > 0 else -1
        gen2 = enneper_curve(args.k2, args.l2, omega2, w2)
    else:
        (k1, l1, o1), (k2, l2, o2) = _EXAMPLE_KL[args.name]
        gen1 = enneper_curve(k1, l1, o1, w1)
        gen2 = enneper_curve(k2, l2, o2, w2)

    S = MinimalSurface.make(gen1, gen2)
    _audit_surface_region(S, cfg.region)

    grid = sample_grid(S, (region[0], region[1]), (region[2], region[3]),
                       cfg.nu, cfg.nv, threads=cfg.threads)
    prefix = f"{cfg.out_dir}/{args.name}"
    write_surface_csv(grid, f"{prefix}_surface.csv")

    verify_region = _inset_region(cfg.region)
    passed, report = verify_surface(S, verify_region, cfg.h, cfg.tol)
    _write_curvature_csv(S, verify_region, cfg.h, f"{prefix}_curvature.csv")
    extra = [
        f"region={','.join(_fmt(x) for x in verify_region)}",
        f"h={_fmt(cfg.h)}",
        f"tol={_fmt(cfg.tol)}",
        f"type={grid.surface_type.value}",
        f"passed={'true' if passed else 'false'}",
    ]
    with open(f"{prefix}_report.txt", "w", newline="\n") as fh:
        fh.write("\n".join(report.lines() + extra) + "\n")
    for line in report.lines() + extra:
        print(line)
    return 0 if passed else VERIFY_EXIT


# --------------------------------------------------------------------------
# generic surface sampling / curvature / verification
# --------------------------------------------------------------------------

def _window_arg(text: Optional[str], fallback) -> tuple[float, float]:
    if text is None:
        return fallback
    a, b = _floats(text, 2, "--window")
    if not a < b:
        raise ParameterError("window must satisfy lo < hi")
    return (a, b)


def _build_generators(args, region, h):
    w1d, w2d = _windows_for_region(region, h)
    w1 = _window_arg(args.window1, w1d)
    w2 = _window_arg(args.window2, w2d)
    if args.canonical:
        for name in ("g1", "h1", "g2", "h2"):
            if getattr(args, name) is None:
                raise ParameterError("canonical mode needs --g1 --h1 --g2 --h2")
        gen1 = CanonicalPair(ExprFn(args.g1), ExprFn(args.h1),
                             args.omega1, w1[0], w1[1])
        gen2 = CanonicalPair(ExprFn(args.g2), ExprFn(args.h2),
                             args.omega2, w2[0], w2[1])
    else:
        for name in ("f1", "g1", "h1", "f2", "g2", "h2"):
            if getattr(args, name) is None:
                raise ParameterError(
                    "triple mode needs --f1 --g1 --h1 --f2 --g2 --h2")
        gen1 = WeierstrassTriple(ExprFn(args.f1), ExprFn(args.g1),
                                 ExprFn(args.h1), w1[0], w1[1])
        gen2 = WeierstrassTriple(ExprFn(args.f2), ExprFn(args.g2),
                                 ExprFn(args.h2), w2[0], w2[1])
    return gen1, gen2


def cmd_surface(args) -> int:
    region = _floats(args.region, 4, "--region")
    cfg = RunConfig("surface", region, 1e-3, 1.0, args.nu, args.nv,
                    ".", args.drop_axis, args.threads).validate()
    gen1, gen2 = _build_generators(args, region, 1e-3)
    S = MinimalSurface.make(gen1, gen2)
    _audit_surface_region(S, region)
    grid = sample_grid(S, (region[0], region[1]), (region[2], region[3]),
                       cfg.nu, cfg.nv, threads=cfg.threads)
    write_surface_csv(grid, args.csv)
    if args.obj:
        write_surface_obj(grid, args.obj, drop_axis=cfg.drop_axis)
    print(f"samples={len(grid.samples)}")
    print(f"singular={grid.singular_count}")
    print(f"type={grid.surface_type.value}")
    return 0


def cmd_curvature(args) -> int:
    t1, t2 = _floats(args.at, 2, "--at")
    lo = min(t1, t2) - 10.0
    hi = max(t1, t2) + 10.0
    ns = argparse.Namespace(**vars(args))
    ns.window1 = args.window1 or f"{lo},{hi}"
    ns.window2 = args.window2 or f"{lo},{hi}"
    ns.canonical = args.mode == "canonical"
    gen1, gen2 = _build_generators(ns, (0.0, 1.0, 0.0, 1.0), 0.0)
    if args.mode == "jets":
        pair = curvature_from_jets(curve_jet(gen1, t1), curve_jet(gen2, t2))
    elif args.mode == "triples":
        pair = curvature_from_triples(gen1, gen2, t1, t2)
    else:
        pair = curvature_canonical(gen1, gen2, t1, t2)
    print(f"K={_fmt(pair.K)}")
    print(f"kappa={_fmt(pair.kappa)}")
    print(f"discriminant={_fmt(pair.discriminant)}")
    return 0


def _read_grid_csv(path: str) -> tuple[ScalarGrid, ScalarGrid]:
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        try:
            iu, iv = header.index("u"), header.index("v")
            ik, ic = header.index("K"), header.index("kappa")
        except ValueError as exc:
            raise ParameterError(f"grid CSV must carry u,v,K,kappa: {exc}")
        rows = []
        for line in fh:
            line = line.strip()
            if line:
                parts = line.split(",")
                rows.append((float(parts[iu]), float(parts[iv]),
                             float(parts[ik]), float(parts[ic])))
    if not rows:
        raise ParameterError("empty grid CSV")
    us = sorted({r[0] for r in rows})
    vs = sorted({r[1] for r in rows})
    nu, nv = len(us), len(vs)
    if nu < 5 or nv < 5 or len(rows) != nu * nv:
        raise ParameterError("grid CSV is not a full rectangular grid")
    du = (us[-1] - us[0]) / (nu - 1)
    dv = (vs[-1] - vs[0]) / (nv - 1)
    for arr, step, name in ((us, du, "u"), (vs, dv, "v")):
        gaps = np.diff(np.asarray(arr))
        if np.max(np.abs(gaps - step)) > 1e-9 * max(1.0, abs(step)):
            raise ParameterError(f"non-uniform {name} spacing in grid CSV")
    uindex = {u: i for i, u in enumerate(us)}
    vindex = {v: j for j, v in enumerate(vs)}
    K = np.full((nu, nv), np.nan)
    kap = np.full((nu, nv), np.nan)
    for u, v, kvl, cvl in rows:
        K[uindex[u], vindex[v]] = kvl
        kap[uindex[u], vindex[v]] = cvl
    mask = np.isfinite(K) & np.isfinite(kap)
    return (ScalarGrid(us[0], vs[0], du, dv, K, mask),
            ScalarGrid(us[0], vs[0], du, dv, kap, mask))


def cmd_verify(args) -> int:
    if args.grid:
        Kg, kg = _read_grid_csv(args.grid)
        report = natural_eq_residuals(Kg, kg, args.delta)
        passed = report.r1_max <= args.tol and report.r2_max <= args.tol
        if args.residuals_csv:
            write_residual_csv(Kg, kg, args.delta, args.residuals_csv)
    else:
        region = _floats(args.region, 4, "--region")
        cfg = RunConfig("verify", region, args.h, args.tol, 1, 1, ".",
                        "x3", 1).validate()
        ns = argparse.Namespace(**vars(args))
        ns.canonical = True
        gen1, gen2 = _build_generators(ns, region, cfg.h)
        S = MinimalSurface.make(gen1, gen2)
        passed, report = verify_surface(S, region, cfg.h, cfg.tol)
    for line in report.lines():
        print(line)
    print(f"passed={'true' if passed else 'false'}")
    return 0 if passed else VERIFY_EXIT


def cmd_equiv(args) -> int:
    w1 = _window_arg(args.window1, None)
    w2 = _window_arg(args.window2, None)
    qa = Quadruple(ExprFn(args.ga1), ExprFn(args.ha1),
                   ExprFn(args.ga2), ExprFn(args.ha2), w1, w2)
    qb = Quadruple(ExprFn(args.gb1), ExprFn(args.hb1),
                   ExprFn(args.gb2), ExprFn(args.hb2), w1, w2)
    audit_quadruple(qa)
    audit_quadruple(qb)
    if args.mobius:
        c = _floats(args.mobius, 8, "--mobius")
        qa = mobius_apply_quadruple(qa, Mobius.normalized(*c[:4]),
                                    Mobius.normalized(*c[4:]))
    elif args.mobius1 or args.mobius2:
        m1 = Mobius.normalized(*_floats(args.mobius1 or "1,0,0,1", 4,
                                        "--mobius1"))
        m2 = Mobius.normalized(*_floats(args.mobius2 or "1,0,0,1", 4,
                                        "--mobius2"))
        qa = mobius_apply_quadruple(qa, m1, m2)
    result = same_solution(qa, qb, grid_n=args.grid_n, tol=args.tol)
    print(f"same_solution={'true' if result else 'false'}")
    return 0 if result else VERIFY_EXIT


def cmd_motion(args) -> int:
    b1 = Mat2(*_floats(args.b1, 4, "--b1"))
    b2 = Mat2(*_floats(args.b2, 4, "--b2"))
    m = motion_from_spinors(b1, b2)
    for i in range(4):
        print("A" + str(i + 1) + "=" +
              ",".join(_fmt(float(x)) for x in m.A[i]))
    if args.check:
        print(f"metric_defect={_fmt(m.metric_defect())}")
        print(f"det_defect={_fmt(m.det_defect())}")
    if args.apply:
        x = Vec4(*_floats(args.apply, 4, "--apply"))
        y = apply_motion(m, x)
        print("image=" + ",".join(_fmt(c) for c in y.components()))
    return 0


def cmd_reparam(args) -> int:
    if not args.t0 < args.t1:
        raise ParameterError("--t0 must be below --t1")
    tr = WeierstrassTriple(ExprFn(args.f), ExprFn(args.g), ExprFn(args.h),
                           args.t0, args.t1)
    pair = reparametrize_natural(tr, grid_n=args.grid_n)
    dev, signs_ok = natural_deviation(pair, args.audit_n)
    print(f"s_max={_fmt(pair.smax)}")
    print(f"omega={pair.omega}")
    print(f"audit_max_dev={_fmt(dev)}")
    print(f"signs_preserved={'true' if signs_ok else 'false'}")
    if args.csv:
        tab_g, tab_h, tab_t = pair.g, pair.h, pair.t_of_s
        lines = ["s,t,g,h,gp,hp"]
        for k in range(tab_g.knots.size):
            lines.append(",".join(_fmt(float(x)) for x in (
                tab_g.knots[k], tab_t.values[k], tab_g.values[k],
                tab_h.values[k], tab_g.derivs[k], tab_h.derivs[k])))
        with open(args.csv, "w", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    return 0


# --------------------------------------------------------------------------
# argument plumbing
# --------------------------------------------------------------------------

def _add_common(p, with_threads=True):
    p.add_argument("--config", help="key=value file; flags override it")
    if with_threads:
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads for grid sampling (output is "
                            "identical for any value)")


def _add_fn_args(p, with_f=True):
    if with_f:
        p.add_argument("--f1")
        p.add_argument("--f2")
    p.add_argument("--g1")
    p.add_argument("--h1")
    p.add_argument("--g2")
    p.add_argument("--h2")
    p.add_argument("--omega1", type=int, default=1, choices=(-1, 1))
    p.add_argument("--omega2", type=int, default=1, choices=(-1, 1))
    p.add_argument("--window1", help="generator 1 parameter window lo,hi")
    p.add_argument("--window2", help="generator 2 parameter window lo,hi")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="minlorentz",
        description="Minimal Lorentz surfaces in neutral 4-space: synthesis, "
                    "curvature grids, natural-PDE verification.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("example", help="built-in example surfaces")
    p.add_argument("name", choices=("m1", "m2", "m3", "enneper"))
    p.add_argument("--k1", type=float)
    p.add_argument("--l1", type=float)
    p.add_argument("--k2", type=float)
    p.add_argument("--l2", type=float)
    p.add_argument("--region", help="u0,u1,v0,v1 (default depends on name)")
    p.add_argument("--h", type=float, default=1e-3)
    p.add_argument("--tol", type=float, default=1e-2)
    p.add_argument("--nu", type=int, default=51)
    p.add_argument("--nv", type=int, default=51)
    p.add_argument("--out-dir", default=".")
    _add_common(p)
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("surface", help="sample a surface from function data")
    _add_fn_args(p)
    p.add_argument("--canonical", action="store_true",
                   help="treat --g/--h as natural-parameter data")
    p.add_argument("--region", required=True, help="u0,u1,v0,v1")
    p.add_argument("--nu", type=int, default=51)
    p.add_argument("--nv", type=int, default=51)
    p.add_argument("--csv", required=True)
    p.add_argument("--obj")
    p.add_argument("--drop-axis", default="x3",
                   choices=("x1", "x2", "x3", "x4"))
    _add_common(p)
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("curvature", help="curvature pair at one point")
    p.add_argument("--mode", choices=("jets", "triples", "canonical"),
                   default="triples")
    _add_fn_args(p)
    p.add_argument("--at", required=True, help="t1,t2")
    _add_common(p, with_threads=False)
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("verify", help="natural-equation residuals")
    p.add_argument("--grid", help="CSV with u,v,K,kappa columns")
    p.add_argument("--delta", type=int, default=-1, choices=(-1, 1))
    _add_fn_args(p, with_f=False)
    p.add_argument("--region", help="u0,u1,v0,v1 (surface mode)")
    p.add_argument("--h", type=float, default=1e-3)
    p.add_argument("--tol", type=float, default=1e-2)
    p.add_argument("--residuals-csv")
    _add_common(p, with_threads=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("equiv", help="same-solution test for two quadruples")
    for name in ("ga1", "ha1", "ga2", "ha2", "gb1", "hb1", "gb2", "hb2"):
        p.add_argument(f"--{name}", required=True)
    p.add_argument("--window1", required=True)
    p.add_argument("--window2", required=True)
    p.add_argument("--grid-n", type=int, default=24)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--mobius",
                   help="a1,b1,c1,d1,a2,b2,c2,d2 applied to the first "
                        "quadruple (g-map then h-map)")
    p.add_argument("--mobius1", help="a,b,c,d applied to the first quadruple")
    p.add_argument("--mobius2", help="a,b,c,d applied to the first quadruple")
    _add_common(p, with_threads=False)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("motion", help="proper motion from an SL2 pair")
    p.add_argument("--b1", required=True, help="a,b,c,d")
    p.add_argument("--b2", required=True, help="a,b,c,d")
    p.add_argument("--check", action="store_true")
    p.add_argument("--apply", help="x1,x2,x3,x4")
    _add_common(p, with_threads=False)
    p.set_defaults(func=cmd_motion)

    p = sub.add_parser("reparam", help="pseudo arc-length reparametrization")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--t0", type=float, required=True)
    p.add_argument("--t1", type=float, required=True)
    p.add_argument("--grid-n", type=int, default=2048)
    p.add_argument("--audit-n", type=int, default=1000)
    p.add_argument("--csv")
    _add_common(p, with_threads=False)
    p.set_defaults(func=cmd_reparam)

    return ap


def _inject_config(argv: list[str]) -> list[str]:
    """Expand --config FILE into leading flags so explicit flags win."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise ParameterError("--config needs a file path")
    path = argv[i + 1]
    rest = argv[:i] + argv[i + 2:]
    extra: list[str] = []
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ParameterError(f"bad config line: {line!r}")
            key, value = line.split("=", 1)
            extra.extend([f"--{key.strip()}", value.strip()])
    # insert right after the subcommand so user flags override
    return rest[:1] + extra + rest[1:]


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        if argv and not argv[0].startswith("-"):
            argv = _inject_config(argv)
        args = build_parser().parse_args(argv)
        return args.func(args)
    except _AUDIT_ERRORS as exc:
        code = type(exc).__name__
        print(f'error: code={code} msg="{exc}"', file=sys.stderr)
        return AUDIT_EXIT
    except MinLorentzError as exc:
        print(f'error: code={type(exc).__name__} msg="{exc}"', file=sys.stderr)
        return AUDIT_EXIT
    except OSError as exc:
        print(f'error: code=OSError msg="{exc}"', file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
