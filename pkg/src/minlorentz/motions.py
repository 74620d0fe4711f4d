"""Proper motions of the neutral 4-space and their spinor/Moebius avatars.

A vector x corresponds to the 2x2 matrix

    S(x) = [[x4 - x3, x1 + x2],
            [x1 - x2, x4 + x3]],       det S = <x, x>,

and a pair (B1, B2) of SL(2,R) matrices acts by S -> B1 S B2^{-1}, which is
a linear isometry A of the neutral metric with det A = 1.  On Weierstrass
data the same action reads as a pair of real linear-fractional maps; the
second matrix carries its entries in the layout [[a2, -b2], [-c2, d2]] so
that both maps use plain (a, b, c, d) coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import BASIS, Vec4
from .errors import (DegenerateDetError, NotSL2Error, ParameterError,
                     PoleError)
from .funcs import Add, Div, Expr, ExprFn, Mul, Num
from .nullcurve import WeierstrassTriple

__all__ = [
    "Mat2", "Mobius", "Motion4", "METRIC",
    "spinor_matrix", "vector_from_spinor", "motion_from_spinors",
    "mobius_pair_from_spinors", "transform_triple", "apply_motion",
    "plane_rotation_24", "flip_34",
]

SL2_TOL = 1e-10
METRIC = np.diag([-1.0, 1.0, -1.0, 1.0])


@dataclass(frozen=True)
class Mat2:
    """Real 2x2 matrix (row-major a, b; c, d)."""

    a: float
    b: float
    c: float
    d: float

    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def matmul(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inv(self) -> "Mat2":
        dt = self.det()
        if dt == 0.0:
            raise DegenerateDetError("singular 2x2 matrix")
        return Mat2(self.d / dt, -self.b / dt, -self.c / dt, self.a / dt)

    @staticmethod
    def identity() -> "Mat2":
        return Mat2(1.0, 0.0, 0.0, 1.0)

    def require_sl2(self, tol: float = SL2_TOL) -> "Mat2":
        if abs(self.det() - 1.0) > tol:
            raise NotSL2Error(f"det = {self.det():.17g} is not 1")
        return self


@dataclass(frozen=True)
class Mobius:
    """Linear-fractional map x -> (a x + b) / (c x + d), det normalised to +-1."""

    a: float
    b: float
    c: float
    d: float

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    @staticmethod
    def normalized(a: float, b: float, c: float, d: float) -> "Mobius":
        dt = a * d - b * c
        if dt == 0.0:
            raise DegenerateDetError("linear-fractional map needs ad - bc != 0")
        r = 1.0 / math.sqrt(abs(dt))
        return Mobius(a * r, b * r, c * r, d * r)

    @staticmethod
    def identity() -> "Mobius":
        return Mobius(1.0, 0.0, 0.0, 1.0)

    def apply(self, x: float) -> float:
        den = self.c * x + self.d
        if den == 0.0:
            raise PoleError(f"pole of linear-fractional map at {x:g}")
        return (self.a * x + self.b) / den


@dataclass(frozen=True, eq=False)
class Motion4:
    """Proper motion x -> A x + b with A^T G A = G and det A = 1."""

    A: np.ndarray
    b: Vec4

    @staticmethod
    def identity() -> "Motion4":
        return Motion4(np.eye(4), Vec4.zero())

    def metric_defect(self) -> float:
        return float(np.max(np.abs(self.A.T @ METRIC @ self.A - METRIC)))

    def det_defect(self) -> float:
        return abs(float(np.linalg.det(self.A)) - 1.0)

    def linear(self) -> "Motion4":
        return Motion4(self.A, Vec4.zero())

    def compose(self, first: "Motion4") -> "Motion4":
        """self after first: x -> self(first(x))."""
        bv = self.A @ np.array(first.b.components()) + np.array(self.b.components())
        return Motion4(self.A @ first.A, Vec4(*map(float, bv)))


def spinor_matrix(x: Vec4) -> Mat2:
    """The 2x2 matrix model of a vector; det equals the squared norm."""
    return Mat2(x.x4 - x.x3, x.x1 + x.x2,
                x.x1 - x.x2, x.x4 + x.x3)


def vector_from_spinor(s: Mat2) -> Vec4:
    return Vec4(0.5 * (s.b + s.c), 0.5 * (s.b - s.c),
                0.5 * (s.d - s.a), 0.5 * (s.a + s.d))


def motion_from_spinors(b1: Mat2, b2: Mat2) -> Motion4:
    """Linear motion induced by S -> B1 S B2^{-1} on the matrix model."""
    b1.require_sl2()
    b2.require_sl2()
    b2inv = b2.inv()
    cols = []
    for e in BASIS:
        s_hat = b1.matmul(spinor_matrix(e)).matmul(b2inv)
        cols.append(vector_from_spinor(s_hat).components())
    return Motion4(np.array(cols).T, Vec4.zero())


def mobius_pair_from_spinors(b1: Mat2, b2: Mat2) -> tuple[Mobius, Mobius]:
    """Moebius coefficients matching motion_from_spinors on Weierstrass data.

    B1 carries (a1, b1; c1, d1) directly; B2 stores (a2, -b2; -c2, d2).
    """
    m1 = Mobius(b1.a, b1.b, b1.c, b1.d)
    m2 = Mobius(b2.a, -b2.b, -b2.c, b2.d)
    return m1, m2


def _lft_expr(m: Mobius, e: Expr) -> Expr:
    return Div(Add(Mul(Num(m.a), e), Num(m.b)),
               Add(Mul(Num(m.c), e), Num(m.d)))


def _den_expr(m: Mobius, e: Expr) -> Expr:
    return Add(Mul(Num(m.c), e), Num(m.d))


def transform_triple(tr: WeierstrassTriple, m1: Mobius, m2: Mobius,
                     audit_n: int = 512) -> WeierstrassTriple:
    """Weierstrass data of the moved curve:

        f -> f (c1 g + d1)(c2 h + d2),
        g -> (a1 g + b1)/(c1 g + d1),   h -> (a2 h + b2)/(c2 h + d2).

    Raises PoleError if either denominator vanishes (or changes sign) on the
    audit grid.
    """
    if not (isinstance(tr.f, ExprFn) and isinstance(tr.g, ExprFn)
            and isinstance(tr.h, ExprFn)):
        raise ParameterError(
            "transform_triple needs expression-backed generating functions")

    ts = np.linspace(tr.tmin, tr.tmax, audit_n)
    for m, fn, label in ((m1, tr.g, "c1*g + d1"), (m2, tr.h, "c2*h + d2")):
        den = m.c * np.asarray(fn(ts), dtype=float) + m.d
        bad = np.flatnonzero((den == 0.0)
                             | (np.sign(den) != np.sign(den[0])))
        if den[0] == 0.0:
            raise PoleError(f"{label} vanishes at t = {ts[0]:g}")
        if bad.size:
            raise PoleError(f"{label} vanishes near t = {ts[bad[0]]:g}")

    f_expr = Mul(tr.f.expr, Mul(_den_expr(m1, tr.g.expr),
                                _den_expr(m2, tr.h.expr)))
    g_expr = _lft_expr(m1, tr.g.expr)
    h_expr = _lft_expr(m2, tr.h.expr)
    return WeierstrassTriple(ExprFn(f_expr), ExprFn(g_expr), ExprFn(h_expr),
                             tr.tmin, tr.tmax)


def apply_motion(m: Motion4, x: Vec4) -> Vec4:
    out = m.A @ np.array(x.components()) + np.array(m.b.components())
    return Vec4(*map(float, out))


def plane_rotation_24(theta: float) -> Motion4:
    """Rotation in the (x2, x4) plane; a proper orthochronous motion.

    Useful for escaping the xi1 - xi2 = 0 chart before Weierstrass recovery.
    """
    c, s = math.cos(theta), math.sin(theta)
    A = np.eye(4)
    A[1, 1], A[1, 3] = c, -s
    A[3, 1], A[3, 3] = s, c
    return Motion4(A, Vec4.zero())


def flip_34() -> Motion4:
    """Sign change of the third and fourth coordinates (proper,
    non-orthochronous); on Weierstrass data it reads (f, g, h) -> (f, -g, -h)."""
    return Motion4(np.diag([1.0, 1.0, -1.0, -1.0]), Vec4.zero())
