"""Shared generators for randomized admissibility-constrained test data."""

import math

import numpy as np
import pytest

from minlorentz.funcs import Add, ExprFn, Mul, Num, Pow, Var, Fun
from minlorentz.motions import Mat2, Mobius
from minlorentz.nullcurve import WeierstrassTriple
from minlorentz.equivalence import Quadruple


def rel_err(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def _random_monotone_expr(rng):
    """a0 + a1 t + a2 t^2 + b sin(t) with |derivative| >= 0.3 on |t| <= 0.8."""
    a0 = rng.uniform(-1.0, 1.0)
    a1 = rng.uniform(0.9, 2.0) * rng.choice([-1.0, 1.0])
    a2 = rng.uniform(-0.3, 0.3)
    b = rng.uniform(-0.2, 0.2)
    t = Var()
    e = Add(Add(Num(a0), Mul(Num(a1), t)),
            Add(Mul(Num(a2), Pow(t, 2)), Mul(Num(b), Fun("sin", t))))
    return ExprFn(e)


def _random_window(rng):
    lo = rng.uniform(-0.7, -0.1)
    return (lo, lo + rng.uniform(0.5, 0.9))


def random_triple(rng) -> WeierstrassTriple:
    """Non-degenerate triple with |f|, |g'|, |h'| bounded away from zero."""
    window = _random_window(rng)
    c0 = rng.uniform(0.6, 1.5) * rng.choice([-1.0, 1.0])
    c1 = rng.uniform(-0.3, 0.3)
    f = ExprFn(Add(Num(c0), Mul(Num(c1), Var())))
    g = _random_monotone_expr(rng)
    h = _random_monotone_expr(rng)
    tr = WeierstrassTriple(f, g, h, *window)
    ts = np.linspace(*window, 257)
    assert np.min(np.abs(f(ts))) > 0.2
    assert np.min(np.abs(g.deriv(ts))) > 0.2
    assert np.min(np.abs(h.deriv(ts))) > 0.2
    return tr


def shift_expr_fn(fn: ExprFn, c: float) -> ExprFn:
    return ExprFn(Add(fn.expr, Num(c)))


def random_admissible_pair(rng) -> tuple[WeierstrassTriple, WeierstrassTriple]:
    """Two triples whose g- and h-ranges are separated, so E never vanishes."""
    tr1 = random_triple(rng)
    tr2 = random_triple(rng)
    t1s = np.linspace(tr1.tmin, tr1.tmax, 257)
    t2s = np.linspace(tr2.tmin, tr2.tmax, 257)
    g_shift = float(np.max(tr1.g(t1s)) - np.min(tr2.g(t2s))) + 1.0
    h_shift = float(np.max(tr1.h(t1s)) - np.min(tr2.h(t2s))) + 1.0
    tr2 = WeierstrassTriple(tr2.f, shift_expr_fn(tr2.g, g_shift),
                            shift_expr_fn(tr2.h, h_shift),
                            tr2.tmin, tr2.tmax)
    return tr1, tr2


def random_quadruple(rng) -> Quadruple:
    """Natural-parameter style quadruple with separated value ranges."""
    w1 = _random_window(rng)
    w2 = _random_window(rng)
    g1, h1 = _random_monotone_expr(rng), _random_monotone_expr(rng)
    g2, h2 = _random_monotone_expr(rng), _random_monotone_expr(rng)
    t1s = np.linspace(*w1, 257)
    t2s = np.linspace(*w2, 257)
    g2 = shift_expr_fn(g2, float(np.max(g1(t1s)) - np.min(g2(t2s))) + 1.0)
    h2 = shift_expr_fn(h2, float(np.max(h1(t1s)) - np.min(h2(t2s))) + 1.0)
    return Quadruple(g1, h1, g2, h2, w1, w2)


def random_sl2(rng) -> Mat2:
    while True:
        a, b, c, d = rng.normal(size=4)
        det = a * d - b * c
        if abs(det) < 0.1:
            continue
        r = 1.0 / math.sqrt(abs(det))
        if det < 0:
            b, d = -b, -d  # flip a column to land in SL2
        return Mat2(a * r, b * r, c * r, d * r)


def safe_mobius(rng, values: np.ndarray) -> Mobius:
    """Random determinant-one map whose denominator stays >= 0.2 on values."""
    lo, hi = float(np.min(values)), float(np.max(values))
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    while True:
        c = rng.uniform(-0.8, 0.8)
        d = c * mid + (abs(c) * half + rng.uniform(0.3, 1.5)) * rng.choice([-1.0, 1.0])
        a = rng.uniform(-1.5, 1.5)
        b = rng.uniform(-1.5, 1.5)
        if abs(a * d - b * c) < 0.1:
            continue
        m = Mobius.normalized(a, b, c, d)
        den = m.c * values + m.d
        if np.min(np.abs(den)) > 0.2 and np.all(np.sign(den) == np.sign(den[0])):
            return m


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
