"""Unit quaternions, su(2) vectors, and spherical triangles on S(Im H)."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from knotrep.angles import RationalAngle, fold_to_distance
from knotrep.errors import InfeasibleTriangle, NonUnitError, OutOfRange

UNIT_TOL = 1e-12


@dataclass(frozen=True)
class ImVector:
    """A purely imaginary quaternion ``x i + y j + z k``."""

    x: float
    y: float
    z: float

    @classmethod
    def of(cls, v) -> "ImVector":
        return cls(float(v[0]), float(v[1]), float(v[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def dot(self, other: "ImVector") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "ImVector") -> "ImVector":
        return ImVector(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def __neg__(self) -> "ImVector":
        return ImVector(-self.x, -self.y, -self.z)

    def as_quaternion(self) -> "Quaternion":
        return Quaternion(0.0, self.x, self.y, self.z)


I_VEC = ImVector(1.0, 0.0, 0.0)
J_VEC = ImVector(0.0, 1.0, 0.0)
K_VEC = ImVector(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class Quaternion:
    w: float
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def of(cls, q) -> "Quaternion":
        return cls(*(float(c) for c in q))

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    @property
    def imag(self) -> ImVector:
        return ImVector(self.x, self.y, self.z)

    def norm(self) -> float:
        return math.sqrt(self.w**2 + self.x**2 + self.y**2 + self.z**2)

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def inverse(self) -> "Quaternion":
        n2 = self.w**2 + self.x**2 + self.y**2 + self.z**2
        c = self.conj()
        return Quaternion(c.w / n2, c.x / n2, c.y / n2, c.z / n2)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return qmul(self, other)
        if isinstance(other, ImVector):
            return qmul(self, other.as_quaternion())
        return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)

    def __rmul__(self, other):
        if isinstance(other, ImVector):
            return qmul(other.as_quaternion(), self)
        return self * other

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __pow__(self, k: int) -> "Quaternion":
        base = self if k >= 0 else self.inverse()
        out = ONE
        for _ in range(abs(k)):
            out = qmul(out, base)
        return out

    def distance_to(self, other: "Quaternion") -> float:
        return float(np.linalg.norm(self.as_array() - other.as_array()))


ONE = Quaternion(1.0)


def qmul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product."""
    return Quaternion(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


def _check_unit(norm: float, what: str, tol: float = UNIT_TOL) -> None:
    if abs(norm - 1.0) > tol:
        raise NonUnitError(f"{what} has norm {norm!r}, expected 1")


def exp_im(axis: ImVector, angle) -> Quaternion:
    """``cos(angle) + axis sin(angle)`` for a unit imaginary axis.

    ``angle`` may be a RationalAngle or a float in radians.
    """
    _check_unit(axis.norm(), "axis")
    t = angle.radians if isinstance(angle, RationalAngle) else float(angle)
    c, s = math.cos(t), math.sin(t)
    return Quaternion(c, axis.x * s, axis.y * s, axis.z * s)


def rotation_matrix(q) -> np.ndarray:
    """Matrix of ``v -> q v q^{-1}`` on Im H, without a unit-norm check."""
    w, x, y, z = q.as_array() if isinstance(q, Quaternion) else q
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
        [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
        [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
    ])


def adjoint_matrix(q: Quaternion) -> np.ndarray:
    """The rotation ``Ad_q`` of su(2) = R^3."""
    _check_unit(q.norm(), "quaternion", tol=1e-10)
    return rotation_matrix(q)


def sphere_distance(u: ImVector, v: ImVector) -> float:
    _check_unit(u.norm(), "point", tol=1e-10)
    _check_unit(v.norm(), "point", tol=1e-10)
    return math.acos(max(-1.0, min(1.0, u.dot(v))))


class Verdict(enum.Enum):
    NON_DEGENERATE = "non-degenerate"
    DEGENERATE = "degenerate"
    INFEASIBLE = "infeasible"

    def __str__(self) -> str:
        return self.value

    @property
    def feasible(self) -> bool:
        return self is not Verdict.INFEASIBLE


@dataclass(frozen=True)
class Realizability:
    verdict: Verdict
    gram_det: float


def gram_determinant(a: float, b: float, c: float) -> float:
    ca, cb, cc = math.cos(a), math.cos(b), math.cos(c)
    return 1 + 2 * ca * cb * cc - ca * ca - cb * cb - cc * cc


def _check_distance(*angles: RationalAngle) -> None:
    for a in angles:
        if a.over_pi > 1:
            raise OutOfRange(f"distance {a} pi exceeds pi")


def is_great_circle_triple(a: RationalAngle, b: RationalAngle, c: RationalAngle) -> bool:
    """Exact test that three points at pairwise distances a, b, c fit on one great circle."""
    return c in (fold_to_distance(a + b), fold_to_distance(a - b))


def triangle_realizability(a: RationalAngle, b: RationalAngle, c: RationalAngle) -> Realizability:
    """Whether three points of S^2 exist at pairwise distances a, b, c.

    Degeneracy is decided exactly; the sign test on the Gram determinant only runs
    once the exact test has ruled out a zero determinant.
    """
    _check_distance(a, b, c)
    g = gram_determinant(a.radians, b.radians, c.radians)
    if is_great_circle_triple(a, b, c):
        return Realizability(Verdict.DEGENERATE, g)
    if abs(g) <= 1e-9:
        raise ArithmeticError(f"Gram determinant {g!r} too close to zero for ({a}, {b}, {c})")
    return Realizability(Verdict.NON_DEGENERATE if g > 0 else Verdict.INFEASIBLE, g)


def planar_triangle_check(
    a12: RationalAngle, a23: RationalAngle, a31: RationalAngle
) -> tuple[Fraction, Fraction, bool]:
    """The plain triangle inequality ``|a23 - a31| <= a12 <= a23 + a31``.

    Bounds are returned as exact multiples of pi and are not folded, so the upper
    bound may exceed 1.
    """
    _check_distance(a12, a23, a31)
    lo = abs(a23.over_pi - a31.over_pi)
    hi = a23.over_pi + a31.over_pi
    return lo, hi, lo <= a12.over_pi <= hi


def construct_triangle(
    a12: RationalAngle, a23: RationalAngle, a31: RationalAngle, mirror: int = 1
) -> tuple[ImVector, ImVector, ImVector]:
    """Points z1 = j, z2 = j e^{i a12}, z3 at the prescribed distances.

    ``mirror`` picks the sign of the i-component of z3; the two choices are
    reflections of each other in the (j, k)-plane and agree when degenerate.
    """
    real = triangle_realizability(a12, a23, a31)
    if real.verdict is Verdict.INFEASIBLE:
        raise InfeasibleTriangle(f"no spherical triangle with sides ({a12}, {a23}, {a31})")
    t12, t23, t31 = a12.radians, a23.radians, a31.radians
    z1 = J_VEC
    z2 = ImVector(0.0, math.cos(t12), -math.sin(t12))
    s12 = math.sin(t12)
    if a12.is_zero_or_pi():
        # z2 = +-z1: z3 is only pinned down to a circle about j; take it in the (j, k)-plane.
        y, z = math.cos(t31), -math.sin(t31)
        x = 0.0
    else:
        # <z3, j> = cos a31 and <z3, z2> = cos a23 fix the (j, k)-components.
        y = math.cos(t31)
        z = (math.cos(t12) * y - math.cos(t23)) / s12
        x2 = 1.0 - y * y - z * z
        if real.verdict is Verdict.DEGENERATE:
            x = 0.0
        else:
            x = math.sqrt(max(x2, 0.0))
    sign = 1.0 if mirror >= 0 else -1.0
    return z1, z2, ImVector(sign * x + 0.0, y, z)
