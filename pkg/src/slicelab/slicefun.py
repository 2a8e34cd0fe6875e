"""Stem functions and the two-slice representation formula at a point."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

import numpy as np

from ._config import tolerances
from .errors import NotInSet
from .geometry import SliceSet
from .quaternion import (
    ImaginaryUnit,
    Quaternion,
    SlicePoint,
    check_pair,
    embed,
    interp_matrix_inv,
    qinv,
    random_unit,
)

PointFunction = Callable[[SlicePoint], Quaternion]


@dataclass(frozen=True)
class StemFunction:
    """Upper stem F(x, y) = (F1, F2), so that f(x + yI) = F1 + I F2 for y >= 0."""

    evaluator: Callable[[float, float], tuple[Quaternion, Quaternion]]

    def __call__(self, x: float, y: float) -> tuple[Quaternion, Quaternion]:
        f1, f2 = self.evaluator(x, y)
        return Quaternion.coerce(f1), Quaternion.coerce(f2)

    def reflected(self) -> "StemFunction":
        """Extend to y < 0 with F1 even and F2 odd in y."""

        def ev(x, y):
            if y >= 0:
                return self(x, y)
            f1, f2 = self(x, -y)
            return f1, -f2

        return StemFunction(ev)

    def real_axis_defect(self, xs: Sequence[float]) -> float:
        """max |F2(x, 0)|; nonzero values make (1, I)F(x, 0) depend on I."""
        return max((float(self(x, 0.0)[1].norm()) for x in xs), default=0.0)


def eval_from_stem(F: StemFunction, P: SlicePoint) -> Quaternion:
    f1, f2 = F(P.x, P.y)
    if P.is_real:
        return f1
    return f1 + P.unit * f2


def stem_from_pair(J: ImaginaryUnit, K: ImaginaryUnit, fJ, fK) -> tuple[Quaternion, Quaternion]:
    """Solve (1, J) F = fJ and (1, K) F = fK for F."""
    return interp_matrix_inv(J, K).apply(fJ, fK)


def repformula_point(I: ImaginaryUnit, J: ImaginaryUnit, K: ImaginaryUnit, fJ, fK) -> Quaternion:
    """(I - K)(J - K)^-1 fJ + (I - J)(K - J)^-1 fK."""
    check_pair(J, K)
    fJ, fK = Quaternion.coerce(fJ), Quaternion.coerce(fK)
    return (I - K) * qinv(J - K) * fJ + (I - J) * qinv(K - J) * fK


def repformula_matrix(I: ImaginaryUnit, J: ImaginaryUnit, K: ImaginaryUnit, fJ, fK) -> Quaternion:
    """The same value written as (1, I) [[1, J], [1, K]]^-1 (fJ, fK)^T."""
    f1, f2 = stem_from_pair(J, K, fJ, fK)
    return f1 + I * f2


def repformula_split(I: ImaginaryUnit, J: ImaginaryUnit, K: ImaginaryUnit, fJ, fK) -> Quaternion:
    """(J - K)^-1 [J fJ - K fK] + I (J - K)^-1 [fJ - fK]."""
    check_pair(J, K)
    fJ, fK = Quaternion.coerce(fJ), Quaternion.coerce(fK)
    a = qinv(J - K)
    return a * (J * fJ - K * fK) + I * a * (fJ - fK)


def partition_coefficients(I, J, K) -> tuple[Quaternion, Quaternion]:
    check_pair(J, K)
    return (I - K) * qinv(J - K), (I - J) * qinv(K - J)


@dataclass(frozen=True)
class SliceSampleTriple:
    """Point coordinates (x, y) seen on three slices; values filled in on demand."""

    x: float
    y: float
    I: ImaginaryUnit
    J: ImaginaryUnit
    K: ImaginaryUnit
    fI: Optional[Quaternion] = None
    fJ: Optional[Quaternion] = None
    fK: Optional[Quaternion] = None

    def __post_init__(self):
        if self.y < 0:
            raise ValueError("sample triples use y >= 0")
        check_pair(self.J, self.K)

    def points(self) -> tuple[SlicePoint, SlicePoint, SlicePoint]:
        return tuple(SlicePoint.of(u, self.x, self.y) for u in (self.I, self.J, self.K))

    def with_values(self, f: PointFunction) -> "SliceSampleTriple":
        pI, pJ, pK = self.points()
        return replace(self, fI=f(pI), fJ=f(pJ), fK=f(pK))

    def residual(self) -> float:
        return float((self.fI - repformula_point(self.I, self.J, self.K, self.fJ, self.fK)).norm())


def random_triples(
    rng: np.random.Generator,
    n: int,
    point_sampler: Callable[[np.random.Generator], tuple[float, float]],
    min_sep: float = 0.1,
) -> list[SliceSampleTriple]:
    """Seeded triples with |J - K| >= min_sep."""
    out = []
    while len(out) < n:
        x, y = point_sampler(rng)
        I, J, K = random_unit(rng), random_unit(rng), random_unit(rng)
        if float((J - K).norm()) < min_sep:
            continue
        out.append(SliceSampleTriple(float(x), float(abs(y)), I, J, K))
    return out


def disk_sampler(radius: float) -> Callable[[np.random.Generator], tuple[float, float]]:
    """(x, y >= 0) uniform in the upper half of the disk of given radius about 0."""

    def draw(rng):
        r = radius * math.sqrt(rng.uniform())
        t = math.pi * rng.uniform()
        return r * math.cos(t), r * math.sin(t)

    return draw


@dataclass(frozen=True)
class SlicenessReport:
    n: int
    max_residual: float
    mean_residual: float
    violations: tuple[tuple[int, float], ...]
    tolerance: float

    @property
    def passed(self) -> bool:
        return not self.violations


def sliceness_check(
    f: PointFunction, S: SliceSet, samples: Sequence[SliceSampleTriple], tol: Optional[float] = None
) -> SlicenessReport:
    """Residual of the point representation formula over sample triples."""
    tol = tolerances().check if tol is None else tol
    residuals = []
    for t in samples:
        for P in t.points():
            if not S.contains_coords(P.unit, P.x, P.y):
                raise NotInSet(f"sample ({P.x}, {P.y}) on unit {P.unit.vec()} is outside the set")
        residuals.append(t.with_values(f).residual())
    res = np.asarray(residuals, dtype=float)
    viol = tuple((int(k), float(r)) for k, r in enumerate(res) if r > tol)
    return SlicenessReport(
        len(res),
        float(res.max()) if len(res) else 0.0,
        float(res.mean()) if len(res) else 0.0,
        viol,
        tol,
    )


# ---------------------------------------------------------------------------
# concrete slice functions


def right_polynomial(coeffs: Sequence) -> Callable[[Quaternion], Quaternion]:
    """q -> sum_n q^n a_n with quaternion coefficients on the right (Horner)."""
    cs = [Quaternion.coerce(c) for c in coeffs]

    def f(q):
        q = Quaternion.coerce(q)
        acc = cs[-1]
        for a in reversed(cs[:-1]):
            acc = q * acc + a
        return acc

    return f


def on_points(g: Callable[[Quaternion], Quaternion]) -> PointFunction:
    """Lift a quaternion function to canonical slice points."""
    return lambda P: g(P.to_quaternion())


def polynomial_stem(coeffs: Sequence) -> StemFunction:
    """Stem of q -> sum q^n a_n: (x + iy)^n = u_n + i v_n gives F = (sum u_n a_n, sum v_n a_n)."""
    cs = [Quaternion.coerce(c) for c in coeffs]

    def ev(x, y):
        z = complex(x, y)
        p = 1 + 0j
        f1 = Quaternion(0.0, 0.0, 0.0, 0.0)
        f2 = Quaternion(0.0, 0.0, 0.0, 0.0)
        for a in cs:
            f1 = f1 + p.real * a
            f2 = f2 + p.imag * a
            p *= z
        return f1, f2

    return StemFunction(ev)


def point_of(unit: ImaginaryUnit, x: float, y: float) -> Quaternion:
    return embed(unit, x, y)
