"""Slice regular extension from holomorphic data on two slices.

Given holomorphic f1 on U1 in C_{I1} and f2 on U2 in C_{I2}, the
extension at x + yJ (y >= 0) is

    (J - I2)(I1 - I2)^-1 f1(x + y I1) + (J - I1)(I2 - I1)^-1 f2(x + y I2)

wherever both arguments lie in the data domains; on the upper half of
either defining slice (and on shared real points) the data itself is
returned.  Taking (I, -I) with the same disk twice gives the unique
extension of a disk to its sigma-ball.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from ._config import tolerances
from .errors import InconsistentRealData, OutOfDomain, OutOfExtension
from .geometry import SliceSet, sigma_distance
from .quaternion import (
    I_UNIT,
    ImaginaryUnit,
    Quaternion,
    check_pair,
    embed,
    qinv,
    slice_point,
    unit_of,
)

__all__ = [
    "Disk",
    "HolomorphicSliceData",
    "HoloValue",
    "ExtendedFunction",
    "holo_eval",
    "cr_residual",
    "extend_pair_eval",
    "extend_from_disk",
    "sigma_series_eval",
    "SeriesResult",
    "empirical_radius",
]


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def contains(self, z: complex) -> bool:
        return abs(z - self.center) < self.radius

    def conj(self) -> "Disk":
        return Disk(self.center.conjugate(), self.radius)


class HoloValue(NamedTuple):
    value: Quaternion
    bound: float  # truncation error bound; 0.0 for black-box data


def _coords(z, unit: ImaginaryUnit) -> complex:
    """Coordinate of z in C_unit; accepts a complex number or a quaternion of C_unit."""
    if isinstance(z, complex) or isinstance(z, (int, float)):
        return complex(z)
    q = Quaternion.coerce(z)
    u = unit_of(q)
    if u is None:
        return complex(float(q.w), 0.0)
    c = float(u.dot(unit))
    if abs(abs(c) - 1.0) > 1e-9:
        raise OutOfDomain(f"{tuple(q)} does not lie in the slice of the data")
    return complex(float(q.w), math.copysign(float(q.im_norm()), c))


@dataclass(frozen=True, eq=False)
class HolomorphicSliceData:
    """Holomorphic quaternion-valued data on a union of disks in one slice.

    Either ``coefficients`` (series sum (z - c)^n a_n about the first
    disk's center, right coefficients) or a black-box ``oracle`` taking
    the complex coordinate in C_unit.
    """

    unit: ImaginaryUnit
    disks: tuple[Disk, ...]
    coefficients: Optional[tuple[Quaternion, ...]] = None
    oracle: Optional[Callable[[complex], Quaternion]] = None

    def __post_init__(self):
        if (self.coefficients is None) == (self.oracle is None):
            raise ValueError("give exactly one of coefficients or oracle")
        if not self.disks:
            raise ValueError("empty domain")

    @classmethod
    def series(cls, unit: ImaginaryUnit, center: complex, radius: float, coefficients: Sequence) -> "HolomorphicSliceData":
        return cls(unit, (Disk(complex(center), float(radius)),), tuple(Quaternion.coerce(a) for a in coefficients))

    @classmethod
    def blackbox(cls, unit: ImaginaryUnit, disks: Sequence[Disk], fn: Callable[[complex], Quaternion]) -> "HolomorphicSliceData":
        return cls(unit, tuple(disks), None, fn)

    @property
    def center(self) -> complex:
        return self.disks[0].center

    def contains(self, z) -> bool:
        zc = _coords(z, self.unit)
        return any(d.contains(zc) for d in self.disks)

    def flipped(self) -> "HolomorphicSliceData":
        """The same function viewed on the slice parameterized by -unit."""
        disks = tuple(d.conj() for d in self.disks)
        if self.coefficients is not None:
            return HolomorphicSliceData(-self.unit, disks, self.coefficients)
        fn = self.oracle
        return HolomorphicSliceData(-self.unit, disks, None, lambda z: fn(z.conjugate()))

    def __call__(self, z) -> Quaternion:
        return holo_eval(self, z).value

    def to_json(self) -> dict:
        if self.coefficients is None:
            raise ValueError("black-box data has no JSON form")
        d = self.disks[0]
        return {
            "unit": list(self.unit.vec()),
            "center_x": d.center.real,
            "center_y": d.center.imag,
            "radius": d.radius,
            "coefficients": [list(map(float, a)) for a in self.coefficients],
        }


def _series_terms(h: HolomorphicSliceData, zc: complex) -> list[Quaternion]:
    u = zc - h.center
    p = 1 + 0j
    out = []
    for a in h.coefficients:
        out.append(embed(h.unit, p.real, p.imag) * a)
        p *= u
    return out


def holo_eval(h: HolomorphicSliceData, z) -> HoloValue:
    zc = _coords(z, h.unit)
    if not any(d.contains(zc) for d in h.disks):
        raise OutOfDomain(f"{zc} is outside the data domain")
    if h.coefficients is None:
        return HoloValue(Quaternion.coerce(h.oracle(zc)), 0.0)
    total = Quaternion(0.0, 0.0, 0.0, 0.0)
    for t in _series_terms(h, zc):
        total = total + t
    r = h.disks[0].radius
    rho = abs(zc - h.center) / r
    scaled = max(float(a.norm()) * r**n for n, a in enumerate(h.coefficients))
    n_terms = len(h.coefficients)
    bound = scaled * rho**n_terms / (1.0 - rho) if rho < 1 else math.inf
    return HoloValue(total, bound)


def cr_residual(h: HolomorphicSliceData, z, step: float = 1e-4) -> float:
    """|1/2 (d/dx + I d/dy) f| by central differences."""
    zc = _coords(z, h.unit)
    ok = any(abs(zc - d.center) + step < d.radius for d in h.disks)
    if not ok:
        raise OutOfDomain(f"B({zc}, {step}) is not inside the data domain")
    f = h.__call__
    dx = (f(zc + step) - f(zc - step)) / (2 * step)
    dy = (f(zc + 1j * step) - f(zc - 1j * step)) / (2 * step)
    return float((0.5 * (dx + h.unit * dy)).norm())


def _same(u: ImaginaryUnit, v: ImaginaryUnit) -> bool:
    return float(u.dot(v)) >= 1 - tolerances().unit


@dataclass(frozen=True, eq=False)
class ExtendedFunction:
    """Extension of a pair of slice data (I1 != I2) to U^{+Delta}."""

    data1: HolomorphicSliceData
    data2: HolomorphicSliceData

    def __post_init__(self):
        check_pair(self.data1.unit, self.data2.unit)

    @property
    def units(self) -> tuple[ImaginaryUnit, ImaginaryUnit]:
        return self.data1.unit, self.data2.unit

    def _in1(self, z: complex) -> bool:
        return any(d.contains(z) for d in self.data1.disks)

    def _in2(self, z: complex) -> bool:
        return any(d.contains(z) for d in self.data2.disks)

    def member_plus(self, unit: ImaginaryUnit, x: float, y: float) -> bool:
        z = complex(x, y)
        if y == 0:
            return self._in1(z) and self._in2(z)
        I1, I2 = self.units
        return (_same(unit, I1) and self._in1(z)) or (_same(unit, I2) and self._in2(z))

    def member_delta(self, unit: ImaginaryUnit, x: float, y: float) -> bool:
        z = complex(x, y)
        return y >= 0 and self._in1(z) and self._in2(z)

    def member(self, unit: ImaginaryUnit, x: float, y: float) -> bool:
        return self.member_plus(unit, x, y) or self.member_delta(unit, x, y)

    def domain(self) -> SliceSet:
        return SliceSet({"type": "ExtensionDomain", "I1": list(self.units[0].vec()), "I2": list(self.units[1].vec())}, self.member)

    def __call__(self, q) -> Quaternion:
        return extend_pair_eval(self, q)

    def at(self, unit: ImaginaryUnit, x: float, y: float) -> Quaternion:
        if y < 0:
            unit, y = -unit, -y
        return extend_pair_eval(self, embed(unit, x, y))

    def restriction(self, unit: ImaginaryUnit, disks: Sequence[Disk]) -> HolomorphicSliceData:
        """Black-box view of the extension on C_unit (coordinates of any sign)."""
        return HolomorphicSliceData.blackbox(unit, disks, lambda z: self.at(unit, z.real, z.imag))


def extend_pair_eval(E: ExtendedFunction, q) -> Quaternion:
    P = slice_point(q)
    x, y, J = float(P.x), float(P.y), P.unit
    I1, I2 = E.units
    z = complex(x, y)
    if P.is_real:
        if not (E._in1(z) and E._in2(z)):
            raise OutOfExtension(f"real point {x} is not in U1 n U2")
        v1, v2 = E.data1(z), E.data2(z)
        if float((v1 - v2).norm()) > tolerances().alg * max(1.0, float(v1.norm())):
            raise InconsistentRealData(f"data disagree at real point {x}")
        return v1
    if _same(J, I1) and E._in1(z):
        return E.data1(z)
    if _same(J, I2) and E._in2(z):
        return E.data2(z)
    if E._in1(z) and E._in2(z):
        f1, f2 = E.data1(z), E.data2(z)
        return (J - I2) * qinv(I1 - I2) * f1 + (J - I1) * qinv(I2 - I1) * f2
    raise OutOfExtension(f"{tuple(Quaternion.coerce(q))} is outside U^(+Delta)")


def extend_from_disk(h: HolomorphicSliceData) -> ExtendedFunction:
    """Unique slice regular extension of data on a disk to its sigma-ball (pair (I, -I))."""
    return ExtendedFunction(h, h.flipped())


# ---------------------------------------------------------------------------
# star-power series on sigma-balls


def empirical_radius(coeffs: Sequence, window: int = 20) -> float:
    """1 / max |a_n|^(1/n) over the last ``window`` coefficients with n >= 1."""
    norms = [float(Quaternion.coerce(a).norm()) for a in coeffs]
    idx = [n for n in range(max(1, len(norms) - window), len(norms))]
    roots = [norms[n] ** (1.0 / n) for n in idx if norms[n] > 0]
    if not roots:
        return math.inf
    m = max(roots)
    return math.inf if m == 0 else 1.0 / m


class SeriesResult(NamedTuple):
    value: Quaternion
    flag: str  # "convergent", "divergent" or "indeterminate"
    radius: float
    sigma: float
    tail: float


def sigma_series_eval(p, coeffs: Sequence, q, N: Optional[int] = None, window: int = 20, cauchy_tol: float = 1e-10) -> SeriesResult:
    """Partial sum of sum (q - p)^{*n} a_n through degree N.

    Evaluated on the slice of p and extended off it by the (I, -I)
    construction.  The flag reads the partial sums: "convergent" when the
    last ``window`` increments are below ``cauchy_tol``, "divergent" when
    they stop decaying.
    """
    p, q = Quaternion.coerce(p), Quaternion.coerce(q)
    cs = [Quaternion.coerce(a) for a in coeffs]
    if N is not None:
        cs = (cs + [Quaternion(0.0, 0.0, 0.0, 0.0)] * (N + 1))[: N + 1]
    I = unit_of(p) or unit_of(q) or I_UNIT
    c = complex(float(p.w), float(p.im_norm()))
    P = slice_point(q)
    x, y = float(P.x), float(P.y)

    def powers(zc):
        u = zc - c
        pw = 1 + 0j
        out = []
        for _ in cs:
            out.append(pw)
            pw *= u
        return out

    if P.is_real or abs(abs(float(P.unit.dot(I))) - 1.0) <= 1e-12:
        sign = 1.0 if P.is_real or float(P.unit.dot(I)) > 0 else -1.0
        pw = powers(complex(x, sign * y))
        terms = [embed(I, w.real, w.imag) * a for w, a in zip(pw, cs)]
    else:
        J, I2 = P.unit, -I
        A = (J - I2) * qinv(I - I2)
        B = (J - I) * qinv(I2 - I)
        # the point x + y I2 of C_{I2} is x - y I in C_I coordinates
        p1, p2 = powers(complex(x, y)), powers(complex(x, -y))
        terms = [A * (embed(I, w1.real, w1.imag) * a) + B * (embed(I, w2.real, w2.imag) * a) for w1, w2, a in zip(p1, p2, cs)]
    total = Quaternion(0.0, 0.0, 0.0, 0.0)
    for t in terms:
        total = total + t
    mags = np.array([float(t.norm()) for t in terms])
    tail = float(mags[-window:].max()) if len(mags) else 0.0
    prev = float(mags[-2 * window : -window].max()) if len(mags) > window else math.inf
    if not np.all(np.isfinite(mags)):
        flag = "divergent"
    elif tail <= cauchy_tol:
        flag = "convergent"
    elif tail >= prev:
        flag = "divergent"
    else:
        flag = "indeterminate"
    return SeriesResult(total, flag, empirical_radius(cs, window), sigma_distance(p, q), tail)
