"""Quaternion algebra and the slice-book coordinates of H.

Components may be ``float`` (the default, used for sampling and
continuation) or :class:`fractions.Fraction` (exact mode, used to verify
algebraic identities).  Every operation below is written against the
field operations only, so a Fraction-valued input stays exact until a
square root is genuinely irrational.

Examples
--------
>>> i, j, k = Quaternion(0, 1, 0, 0), Quaternion(0, 0, 1, 0), Quaternion(0, 0, 0, 1)
>>> i * j == k
True
>>> Quaternion(2, 3, 0, 0) * Quaternion(1, 0, 1, 0)
Quaternion(w=2, x=3, y=2, z=3)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import NamedTuple, Optional

import numpy as np

from ._config import tolerances
from .errors import DegeneratePair, NotAUnit, NotOrthogonal, ZeroQuaternion

__all__ = [
    "Quaternion",
    "ImaginaryUnit",
    "SlicePoint",
    "InterpMatrix",
    "ONE",
    "I_UNIT",
    "J_UNIT",
    "K_UNIT",
    "qmul",
    "qinv",
    "unit_of",
    "embed",
    "split_basis",
    "interp_matrix_inv",
    "orthogonal_unit",
    "random_unit",
    "random_quaternion",
    "rational_unit",
    "exp_unit",
    "slice_point",
]


def exact_sqrt(v):
    """sqrt that stays a Fraction when ``v`` is a rational square."""
    if isinstance(v, Fraction) and v >= 0:
        n, d = math.isqrt(v.numerator), math.isqrt(v.denominator)
        if n * n == v.numerator and d * d == v.denominator:
            return Fraction(n, d)
    return math.sqrt(v)


class Quaternion(NamedTuple):
    """w + x i + y j + z k."""

    w: Real = 0.0
    x: Real = 0.0
    y: Real = 0.0
    z: Real = 0.0

    @classmethod
    def coerce(cls, v) -> "Quaternion":
        if isinstance(v, Quaternion):
            return v
        if isinstance(v, complex):
            return cls(v.real, v.imag, 0.0, 0.0)
        if isinstance(v, Real):
            return cls(v, 0, 0, 0)
        if isinstance(v, (tuple, list, np.ndarray)) and len(v) == 4:
            return cls(*v)
        raise TypeError(f"cannot interpret {v!r} as a quaternion")

    # -- algebra ---------------------------------------------------------
    def __add__(self, other):
        try:
            o = Quaternion.coerce(other)
        except TypeError:
            return NotImplemented
        return Quaternion(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = Quaternion.coerce(other)
        except TypeError:
            return NotImplemented
        return Quaternion(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)

    def __rsub__(self, other):
        try:
            o = Quaternion.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __pos__(self):
        return Quaternion(*self)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            a1, b1, c1, d1 = self
            a2, b2, c2, d2 = other
            return Quaternion(
                a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
            )
        if isinstance(other, Real):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Real):
            return Quaternion(other * self.w, other * self.x, other * self.y, other * self.z)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Quaternion):
            return self * qinv(other)
        if isinstance(other, Real):
            return Quaternion(self.w / other, self.x / other, self.y / other, self.z / other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Quaternion(1, 0, 0, 0) if self.is_exact() else ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- scalar invariants -----------------------------------------------
    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self):
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return exact_sqrt(self.norm2())

    @property
    def re(self):
        return self.w

    @property
    def im(self) -> "Quaternion":
        return Quaternion(0 * self.w, self.x, self.y, self.z)

    def im_norm(self):
        return exact_sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def dot(self, other: "Quaternion"):
        """Euclidean inner product on R^4."""
        return self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z

    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self)

    def to_float(self) -> "Quaternion":
        return Quaternion(*(float(c) for c in self))

    def to_numpy(self) -> np.ndarray:
        return np.array([float(c) for c in self])

    def distance(self, other: "Quaternion") -> float:
        return (self - other).norm()


ONE = Quaternion(1.0, 0.0, 0.0, 0.0)


class ImaginaryUnit(Quaternion):
    """A point of the sphere S = {q : q^2 = -1}.

    Constructed from its three imaginary components.  The norm is checked
    against ``tol.unit``; exact (Fraction) components must have norm
    exactly 1.  Use :meth:`normalized` to project an arbitrary nonzero
    3-vector onto the sphere.
    """

    __slots__ = ()

    def __new__(cls, ix, iy, iz, *, check: bool = True):
        if check:
            n2 = ix * ix + iy * iy + iz * iz
            if all(isinstance(c, Fraction) for c in (ix, iy, iz)):
                if n2 != 1:
                    raise NotAUnit(f"|I|^2 = {n2} != 1")
            elif abs(n2 - 1.0) > 2 * tolerances().unit:
                raise NotAUnit(f"|I|^2 = {float(n2)!r} differs from 1")
        zero = Fraction(0) if isinstance(ix, Fraction) else 0.0
        return super().__new__(cls, zero, ix, iy, iz)

    @classmethod
    def normalized(cls, ix, iy, iz) -> "ImaginaryUnit":
        n = math.sqrt(float(ix) ** 2 + float(iy) ** 2 + float(iz) ** 2)
        if n <= tolerances().zero:
            raise ZeroQuaternion("cannot normalize a zero vector")
        return cls(float(ix) / n, float(iy) / n, float(iz) / n, check=False)

    @property
    def ix(self):
        return self.x

    @property
    def iy(self):
        return self.y

    @property
    def iz(self):
        return self.z

    def vec(self) -> tuple:
        return (self.x, self.y, self.z)

    def __getnewargs__(self):
        return (self.x, self.y, self.z)

    def __neg__(self) -> "ImaginaryUnit":
        return ImaginaryUnit(-self.x, -self.y, -self.z, check=False)

    def __repr__(self) -> str:
        return f"ImaginaryUnit({self.x!r}, {self.y!r}, {self.z!r})"


I_UNIT = ImaginaryUnit(1.0, 0.0, 0.0)
J_UNIT = ImaginaryUnit(0.0, 1.0, 0.0)
K_UNIT = ImaginaryUnit(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class SlicePoint:
    """Canonical slice coordinates: q = x + y*unit with y >= 0.

    Real points carry ``is_real=True`` and the unit ``i`` by convention;
    nothing downstream may depend on that unit.
    """

    unit: ImaginaryUnit
    x: float
    y: float
    is_real: bool = False

    @classmethod
    def of(cls, unit: ImaginaryUnit, x, y) -> "SlicePoint":
        """Canonicalize x + y*unit, flipping (unit, y) when y < 0."""
        if y == 0 or abs(y) <= tolerances().zero:
            return cls(I_UNIT, x, 0 * y, True)
        if y < 0:
            return cls(-unit, x, -y, False)
        return cls(unit, x, y, False)

    def to_quaternion(self) -> Quaternion:
        return embed(self.unit, self.x, self.y)

    @property
    def z(self) -> complex:
        """Coordinate in C_unit identified with C."""
        return complex(self.x, self.y)


def qmul(a, b) -> Quaternion:
    return Quaternion.coerce(a) * Quaternion.coerce(b)


def qinv(q) -> Quaternion:
    q = Quaternion.coerce(q)
    n2 = q.norm2()
    if n2 <= tolerances().zero ** 2:
        raise ZeroQuaternion(f"{q!r} is not invertible")
    c = q.conj()
    return Quaternion(c.w / n2, c.x / n2, c.y / n2, c.z / n2)


def unit_of(q) -> Optional[ImaginaryUnit]:
    """Return I with q in C_I and Im(q) a positive multiple of I.

    Real quaternions have no distinguished unit; ``None`` is returned for
    them (the real flag).
    """
    q = Quaternion.coerce(q)
    n = q.im_norm()
    if n == 0 or n <= tolerances().zero:
        return None
    if isinstance(n, Fraction):
        return ImaginaryUnit(q.x / n, q.y / n, q.z / n)
    return ImaginaryUnit(q.x / n, q.y / n, q.z / n, check=False)


def embed(unit: ImaginaryUnit, x, y) -> Quaternion:
    """The map x + yi -> x + yI into the slice C_I."""
    return Quaternion(x, y * unit.x, y * unit.y, y * unit.z)


def slice_point(q) -> SlicePoint:
    q = Quaternion.coerce(q)
    u = unit_of(q)
    if u is None:
        return SlicePoint(I_UNIT, q.w, 0 * q.w, True)
    return SlicePoint(u, q.w, q.im_norm(), False)


def split_basis(a, I: ImaginaryUnit, J: ImaginaryUnit) -> tuple[Quaternion, Quaternion]:
    """Write a = a1 + a2*J with a1, a2 in C_I, for orthogonal units I, J."""
    a = Quaternion.coerce(a)
    ip = I.dot(J)
    if abs(ip) > tolerances().unit:
        raise NotOrthogonal(f"<I,J> = {float(ip):.3g}")
    K = I * J
    im = a.im
    a1 = Quaternion(a.w, 0, 0, 0) + I * im.dot(I)
    a2 = Quaternion(im.dot(J), 0, 0, 0) + I * im.dot(K)
    return a1, a2


@dataclass(frozen=True)
class InterpMatrix:
    """A 2x2 quaternion matrix [[m11, m12], [m21, m22]]."""

    m11: Quaternion
    m12: Quaternion
    m21: Quaternion
    m22: Quaternion

    @classmethod
    def interpolation(cls, J: Quaternion, K: Quaternion) -> "InterpMatrix":
        one = Quaternion(1, 0, 0, 0) if J.is_exact() else ONE
        return cls(one, J, one, K)

    @classmethod
    def identity(cls) -> "InterpMatrix":
        one, zero = Quaternion(1, 0, 0, 0), Quaternion(0, 0, 0, 0)
        return cls(one, zero, zero, one)

    def __matmul__(self, other: "InterpMatrix") -> "InterpMatrix":
        a, b = self, other
        return InterpMatrix(
            a.m11 * b.m11 + a.m12 * b.m21,
            a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21,
            a.m21 * b.m12 + a.m22 * b.m22,
        )

    def apply(self, v1, v2) -> tuple[Quaternion, Quaternion]:
        v1, v2 = Quaternion.coerce(v1), Quaternion.coerce(v2)
        return self.m11 * v1 + self.m12 * v2, self.m21 * v1 + self.m22 * v2

    def entries(self) -> tuple[Quaternion, ...]:
        return (self.m11, self.m12, self.m21, self.m22)

    def max_deviation(self, other: "InterpMatrix") -> float:
        return max(float((a - b).norm()) for a, b in zip(self.entries(), other.entries()))


def check_pair(J: Quaternion, K: Quaternion) -> None:
    sep = tolerances().sep
    if (J - K).norm2() <= sep * sep:
        raise DegeneratePair(f"|J-K| <= {sep:g}")


def interp_matrix_inv(J: ImaginaryUnit, K: ImaginaryUnit) -> InterpMatrix:
    """Inverse of [[1, J], [1, K]]; rows ((J-K)^-1 J, (K-J)^-1 K), ((J-K)^-1, (K-J)^-1)."""
    check_pair(J, K)
    a = qinv(J - K)
    b = qinv(K - J)
    return InterpMatrix(a * J, b * K, a, b)


def orthogonal_unit(I: ImaginaryUnit) -> ImaginaryUnit:
    """A deterministic unit orthogonal to I (Gram-Schmidt against j, then k)."""
    for cand in (J_UNIT, K_UNIT, I_UNIT):
        c = I.dot(cand)
        v = (cand.x - c * I.x, cand.y - c * I.y, cand.z - c * I.z)
        n = math.sqrt(sum(float(t) ** 2 for t in v))
        if n > 0.5:
            return ImaginaryUnit.normalized(*v)
    raise AssertionError("unreachable: some basis vector is far from I")


def random_unit(rng: np.random.Generator) -> ImaginaryUnit:
    while True:
        v = rng.standard_normal(3)
        n = float(np.linalg.norm(v))
        if n > 1e-6:
            return ImaginaryUnit(*(float(t) / n for t in v), check=False)


def random_quaternion(rng: np.random.Generator, scale: float = 1.0) -> Quaternion:
    return Quaternion(*(float(t) for t in scale * rng.standard_normal(4)))


def rational_unit(a: int, b: int, c: int) -> ImaginaryUnit:
    """Exact rational point of S from integers via inverse stereographic projection."""
    d = a * a + b * b + c * c
    if d == 0:
        raise ZeroQuaternion("a = b = c = 0")
    return ImaginaryUnit(
        Fraction(2 * a * c, d), Fraction(2 * b * c, d), Fraction(a * a + b * b - c * c, d)
    )


def exp_unit(I: ImaginaryUnit, theta: float) -> Quaternion:
    """e^{I theta} = cos(theta) + I sin(theta)."""
    return embed(I, math.cos(theta), math.sin(theta))
