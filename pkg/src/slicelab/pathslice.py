"""Path lifts, the path representation formula and path-slice consistency."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from ._config import tolerances
from .errors import LiftNotContained, PremiseFailed
from .extension import Disk, ExtendedFunction, HolomorphicSliceData
from .geometry import SliceSet, path_in_set
from .paths import ComplexPath
from .quaternion import (
    ImaginaryUnit,
    Quaternion,
    SlicePoint,
    check_pair,
    orthogonal_unit,
    qinv,
    random_unit,
    slice_point,
)
from .slicefun import right_polynomial, stem_from_pair

__all__ = [
    "SliceRegularModel",
    "polynomial_model",
    "extension_model",
    "constant_model",
    "path_repformula",
    "PathFormulaResult",
    "path_slice_consistency",
    "ConsistencyReport",
    "lifting_witness_search",
    "Witness",
    "default_candidates",
    "continuity_probe",
]


@dataclass(frozen=True, eq=False)
class SliceRegularModel:
    """A function on a slice set, evaluated at canonical slice points."""

    domain: SliceSet
    evaluator: Callable[[SlicePoint], Quaternion]
    name: str = ""

    def __call__(self, q) -> Quaternion:
        P = q if isinstance(q, SlicePoint) else slice_point(q)
        return self.evaluator(P)

    def at(self, unit: ImaginaryUnit, x: float, y: float) -> Quaternion:
        return self.evaluator(SlicePoint.of(unit, x, y))

    def along(self, gamma: ComplexPath, unit: ImaginaryUnit, ts: Sequence[float]) -> list[Quaternion]:
        out = []
        for t in ts:
            x, y = gamma.point(t)
            out.append(self.at(unit, x, y))
        return out

    def slice_data(self, unit: ImaginaryUnit, disks: Sequence[Disk]) -> HolomorphicSliceData:
        """Black-box restriction to C_unit, for Cauchy-Riemann checks."""
        return HolomorphicSliceData.blackbox(unit, disks, lambda z: self.at(unit, z.real, z.imag))


def polynomial_model(coeffs: Sequence, domain: SliceSet) -> SliceRegularModel:
    f = right_polynomial(coeffs)
    return SliceRegularModel(domain, lambda P: f(P.to_quaternion()), "polynomial")


def constant_model(c, domain: SliceSet) -> SliceRegularModel:
    c = Quaternion.coerce(c)
    return SliceRegularModel(domain, lambda P: c, "constant")


def extension_model(E: ExtendedFunction) -> SliceRegularModel:
    return SliceRegularModel(E.domain(), lambda P: E(P.to_quaternion()), "extension")


def _require_lift(S: SliceSet, gamma: ComplexPath, unit: ImaginaryUnit, n_path: int, exc=LiftNotContained) -> None:
    c = path_in_set(S, gamma, unit, n_path)
    if not c.contained:
        raise exc(unit, c.exit_t)


class PathFormulaResult(NamedTuple):
    ts: np.ndarray
    formula: list  # right-hand side along t
    direct: list  # f o gamma^I along t
    residual: float


def path_repformula(
    f: SliceRegularModel,
    gamma: ComplexPath,
    I: ImaginaryUnit,
    J: ImaginaryUnit,
    K: ImaginaryUnit,
    n_path: int = 1024,
) -> PathFormulaResult:
    """Compare f o gamma^I with (I-K)(J-K)^-1 f o gamma^J + (I-J)(K-J)^-1 f o gamma^K."""
    check_pair(J, K)
    for u in (I, J, K):
        _require_lift(f.domain, gamma, u, n_path)
    ts = gamma.sample(n_path)[0]
    a = (I - K) * qinv(J - K)
    b = (I - J) * qinv(K - J)
    vI, vJ, vK = (f.along(gamma, u, ts) for u in (I, J, K))
    rhs = [a * fj + b * fk for fj, fk in zip(vJ, vK)]
    res = max(float((d - r).norm()) for d, r in zip(vI, rhs))
    return PathFormulaResult(ts, rhs, vI, res)


@dataclass(frozen=True)
class ConsistencyReport:
    q_gamma: tuple[Quaternion, Quaternion]
    units: tuple[ImaginaryUnit, ...]
    defects: tuple[float, ...]
    tolerance: float

    @property
    def max_defect(self) -> float:
        return max(self.defects, default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_defect <= self.tolerance


def _upper_reduction(gamma: ComplexPath) -> tuple[ComplexPath, int]:
    """Reflected tail delta in the upper half-plane and the sign epsilon.

    delta starts at the last real point of gamma and is conjugated when
    gamma ends in the lower half-plane, so gamma^I(1) = delta^{eps I}(1).
    """
    end_y = gamma.end()[1]
    if end_y == 0.0:
        raise ValueError("gamma(1) is real; no reduction needed")
    # last parameter where gamma is real
    s_last = 0.0
    for seg in gamma.segments():
        (_, y0), (_, y1) = seg.p0, seg.p1
        if y1 == 0.0:
            s_last = seg.t1
        elif y0 * y1 < 0:
            s_last = seg.t_of(y0 / (y0 - y1))
        elif y0 == 0.0:
            s_last = max(s_last, seg.t0)
    eps = 1 if end_y > 0 else -1
    pts = [gamma.point(s_last)]
    for k, c in enumerate(gamma.length_fractions):
        if c > s_last:
            pts.append(gamma.vertices[k])
    pts = [(x, eps * y) for x, y in pts]
    pts[0] = (pts[0][0], 0.0)
    return ComplexPath(tuple(pts)), eps


def path_slice_consistency(
    f: SliceRegularModel,
    gamma: ComplexPath,
    units: Sequence[ImaginaryUnit],
    n_path: int = 1024,
    tol: Optional[float] = None,
) -> ConsistencyReport:
    """Solve f o gamma^I(1) = (1, I) q_gamma from the first two units; report defects on the rest."""
    tol = tolerances().check if tol is None else tol
    units = tuple(units)
    if len(units) < 3:
        raise ValueError("need at least three units")
    check_pair(units[0], units[1])
    for u in units:
        _require_lift(f.domain, gamma, u, n_path)
    ex, ey = gamma.end()
    if ey == 0.0:
        vals = [f.at(u, ex, 0.0) for u in units[:2]]
        q_gamma = stem_from_pair(units[0], units[1], *vals)
    else:
        delta, eps = _upper_reduction(gamma)
        dx, dy = delta.end()
        # gamma^u(1) = delta^{eps u}(1)
        flipped = [u if eps > 0 else -u for u in units[:2]]
        vals = [f.at(v, dx, dy) for v in flipped]
        p1, p2 = stem_from_pair(flipped[0], flipped[1], *vals)
        q_gamma = (p1, eps * p2)
    defects = []
    for u in units[2:]:
        direct = f.at(u, ex, ey)
        defects.append(float((direct - (q_gamma[0] + u * q_gamma[1])).norm()))
    return ConsistencyReport(q_gamma, units, tuple(defects), tol)


class Witness(NamedTuple):
    unit: ImaginaryUnit
    exit_t: float


def default_candidates(J: ImaginaryUnit, n_arc: int = 64, n_random: int = 32, seed: int = 0) -> list[ImaginaryUnit]:
    """Units equi-angled on a half great circle from J to -J, then seeded random units."""
    P = orthogonal_unit(J)
    out = []
    for k in range(1, n_arc + 1):
        th = math.pi * k / (n_arc + 1)
        c, s = math.cos(th), math.sin(th)
        out.append(ImaginaryUnit.normalized(c * J.x + s * P.x, c * J.y + s * P.y, c * J.z + s * P.z))
    rng = np.random.default_rng(seed)
    out.extend(random_unit(rng) for _ in range(n_random))
    return out


def lifting_witness_search(
    S: SliceSet,
    gamma: ComplexPath,
    J: ImaginaryUnit,
    K: ImaginaryUnit,
    candidate_units: Optional[Sequence[ImaginaryUnit]] = None,
    n_path: int = 1024,
    seed: int = 0,
) -> Optional[Witness]:
    """First unit I whose lift leaves S although the J- and K-lifts stay inside.

    A witness shows S violates the lifting property every domain of slice
    regularity has.
    """
    check_pair(J, K)
    _require_lift(S, gamma, J, n_path, PremiseFailed)
    _require_lift(S, gamma, K, n_path, PremiseFailed)
    cands = default_candidates(J, seed=seed) if candidate_units is None else candidate_units
    for I in cands:
        c = path_in_set(S, gamma, I, n_path)
        if not c.contained:
            return Witness(I, c.exit_t)
    return None


def continuity_probe(
    f: SliceRegularModel,
    unit: ImaginaryUnit,
    gamma: ComplexPath,
    n: int = 2048,
) -> float:
    """max |f(gamma^I(t_{k+1})) - f(gamma^I(t_k))| / |gamma(t_{k+1}) - gamma(t_k)| along a sampled path.

    A bounded ratio on compact off-cut paths is the sampled form of
    continuity of the slice restriction.
    """
    ts = gamma.sample(n)[0]
    pts = [gamma.point(t) for t in ts]
    vals = [f.at(unit, x, y) for x, y in pts]
    worst = 0.0
    for (p, v), (p2, v2) in zip(zip(pts, vals), zip(pts[1:], vals[1:])):
        d = math.hypot(p2[0] - p[0], p2[1] - p[1])
        if d > 0:
            worst = max(worst, float((v2 - v).norm()) / d)
    return worst

