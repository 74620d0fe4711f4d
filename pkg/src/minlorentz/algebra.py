"""Split-complex numbers and linear algebra of the neutral metric (-,+,-,+).

The scalar algebra is D = {a + j*b : j^2 = +1}.  Its null basis
q = (1-j)/2, qbar = (1+j)/2 satisfies q*qbar = 0 and makes multiplication
componentwise, which is what every decomposition below exploits.

All types are immutable values and every operation is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Double", "Vec4", "DVec4", "Q", "QBAR",
    "inner", "wedge_inner", "det4",
]


@dataclass(frozen=True)
class Double:
    """Split-complex number re + j*im with j^2 = +1."""

    re: float
    im: float = 0.0

    def __add__(self, other: "Double") -> "Double":
        other = _as_double(other)
        return Double(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Double") -> "Double":
        other = _as_double(other)
        return Double(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "Double":
        return Double(-self.re, -self.im)

    def __mul__(self, other: "Double") -> "Double":
        other = _as_double(other)
        return Double(
            self.re * other.re + self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __radd__ = __add__
    __rmul__ = __mul__

    def scale(self, c: float) -> "Double":
        return Double(c * self.re, c * self.im)

    def conjugate(self) -> "Double":
        return Double(self.re, -self.im)

    def modulus_sq(self) -> float:
        """t * conj(t); negative or zero for zero divisors."""
        return self.re * self.re - self.im * self.im

    def null_decompose(self) -> tuple[float, float]:
        """Components (t1, t2) with t = t1*qbar + t2*q."""
        return self.re + self.im, self.re - self.im

    @staticmethod
    def from_null(t1: float, t2: float) -> "Double":
        return Double(0.5 * (t1 + t2), 0.5 * (t1 - t2))

    def is_zero_divisor(self, tol: float = 0.0) -> bool:
        return abs(self.modulus_sq()) <= tol


def _as_double(x) -> Double:
    if isinstance(x, Double):
        return x
    return Double(float(x), 0.0)


Q = Double(0.5, -0.5)      # q = (1 - j)/2
QBAR = Double(0.5, 0.5)    # qbar = (1 + j)/2


@dataclass(frozen=True)
class Vec4:
    """Point/vector of the flat 4-space with metric diag(-1, +1, -1, +1)."""

    x1: float
    x2: float
    x3: float
    x4: float

    def __add__(self, other: "Vec4") -> "Vec4":
        return Vec4(self.x1 + other.x1, self.x2 + other.x2,
                    self.x3 + other.x3, self.x4 + other.x4)

    def __sub__(self, other: "Vec4") -> "Vec4":
        return Vec4(self.x1 - other.x1, self.x2 - other.x2,
                    self.x3 - other.x3, self.x4 - other.x4)

    def __neg__(self) -> "Vec4":
        return Vec4(-self.x1, -self.x2, -self.x3, -self.x4)

    def scale(self, c: float) -> "Vec4":
        return Vec4(c * self.x1, c * self.x2, c * self.x3, c * self.x4)

    def components(self) -> tuple[float, float, float, float]:
        return (self.x1, self.x2, self.x3, self.x4)

    def norm_euclid(self) -> float:
        """Euclidean magnitude, used only as a round-off scale."""
        return math.sqrt(self.x1**2 + self.x2**2 + self.x3**2 + self.x4**2)

    @staticmethod
    def zero() -> "Vec4":
        return Vec4(0.0, 0.0, 0.0, 0.0)


E1 = Vec4(1.0, 0.0, 0.0, 0.0)
E2 = Vec4(0.0, 1.0, 0.0, 0.0)
E3 = Vec4(0.0, 0.0, 1.0, 0.0)
E4 = Vec4(0.0, 0.0, 0.0, 1.0)
BASIS = (E1, E2, E3, E4)


def inner(a: Vec4, b: Vec4) -> float:
    """Indefinite scalar product -a1*b1 + a2*b2 - a3*b3 + a4*b4."""
    return -a.x1 * b.x1 + a.x2 * b.x2 - a.x3 * b.x3 + a.x4 * b.x4


def wedge_inner(a: Vec4, b: Vec4, c: Vec4, d: Vec4) -> float:
    """Scalar product <a^b, c^d> of two bivectors.

    Computed through the Lagrange identity
    <a,c><b,d> - <a,d><b,c>; the six-dimensional bivector space is never
    materialised since this contraction is all the curvature formulas need.
    """
    return inner(a, c) * inner(b, d) - inner(a, d) * inner(b, c)


def det4(a: Vec4, b: Vec4, c: Vec4, d: Vec4) -> float:
    """Determinant of the 4x4 matrix with columns a, b, c, d.

    Expansion by complementary 2x2 minors of the first two columns; exact
    arithmetic-wise this is the usual alternating multilinear determinant.
    """
    a1, a2, a3, a4 = a.components()
    b1, b2, b3, b4 = b.components()
    c1, c2, c3, c4 = c.components()
    d1, d2, d3, d4 = d.components()

    # minors of columns (a, b) in row pairs
    m12 = a1 * b2 - a2 * b1
    m13 = a1 * b3 - a3 * b1
    m14 = a1 * b4 - a4 * b1
    m23 = a2 * b3 - a3 * b2
    m24 = a2 * b4 - a4 * b2
    m34 = a3 * b4 - a4 * b3
    # complementary minors of columns (c, d)
    n12 = c1 * d2 - c2 * d1
    n13 = c1 * d3 - c3 * d1
    n14 = c1 * d4 - c4 * d1
    n23 = c2 * d3 - c3 * d2
    n24 = c2 * d4 - c4 * d2
    n34 = c3 * d4 - c4 * d3

    return m12 * n34 - m13 * n24 + m14 * n23 + m23 * n14 - m24 * n13 + m34 * n12


@dataclass(frozen=True)
class DVec4:
    """4-vector with Double components; decomposes as v1*qbar + v2*q."""

    x1: Double
    x2: Double
    x3: Double
    x4: Double

    @staticmethod
    def from_null_parts(v1: Vec4, v2: Vec4) -> "DVec4":
        return DVec4(
            Double.from_null(v1.x1, v2.x1),
            Double.from_null(v1.x2, v2.x2),
            Double.from_null(v1.x3, v2.x3),
            Double.from_null(v1.x4, v2.x4),
        )

    def null_parts(self) -> tuple[Vec4, Vec4]:
        p = [x.null_decompose() for x in (self.x1, self.x2, self.x3, self.x4)]
        return (Vec4(p[0][0], p[1][0], p[2][0], p[3][0]),
                Vec4(p[0][1], p[1][1], p[2][1], p[3][1]))

    def conjugate(self) -> "DVec4":
        return DVec4(self.x1.conjugate(), self.x2.conjugate(),
                     self.x3.conjugate(), self.x4.conjugate())


def d_inner(a: DVec4, b: DVec4) -> Double:
    """The neutral bilinear form extended D-bilinearly (no conjugation)."""
    return (-(a.x1 * b.x1) + a.x2 * b.x2 - (a.x3 * b.x3) + a.x4 * b.x4)
