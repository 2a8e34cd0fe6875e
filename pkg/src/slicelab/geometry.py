"""sigma-distance, slice-described subsets of H, and sampled topology probes.

A :class:`SliceSet` is a membership oracle on canonical slice coordinates
(I, x, y >= 0).  Sets with measure-zero excluded pieces (the ray cuts of
the ``ray_complement`` family) also report where a straight segment meets
those pieces, so path containment does not depend on a sample landing on
a cut.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, NamedTuple, Optional, Sequence

import numpy as np

from ._config import tolerances
from .errors import NonpositiveRadius, NotInSet, NotOnSlice
from .paths import ComplexPath
from .quaternion import (
    I_UNIT,
    ImaginaryUnit,
    Quaternion,
    embed,
    unit_of,
)

Member = Callable[[ImaginaryUnit, float, float], bool]
Crossings = Callable[[ImaginaryUnit, tuple, tuple], list]


# ---------------------------------------------------------------------------
# sigma-distance


def same_slice(p: Quaternion, q: Quaternion) -> bool:
    """True when p and q lie in a common slice C_I."""
    a, b = p.im, q.im
    na, nb = a.norm(), b.norm()
    tol = tolerances().unit
    if na <= tolerances().zero or nb <= tolerances().zero:
        return True
    cx = a.y * b.z - a.z * b.y
    cy = a.z * b.x - a.x * b.z
    cz = a.x * b.y - a.y * b.x
    return math.sqrt(float(cx * cx + cy * cy + cz * cz)) <= tol * float(na) * float(nb)


def sigma_distance(p, q) -> float:
    """|q - p| on a common slice, else sqrt(Re(q-p)^2 + (|Im q| + |Im p|)^2).

    Off a common slice this is the larger of the two in-slice distances
    from p to x +- y I_p, which is what makes sigma-balls the convergence
    sets of star-power series.
    """
    p, q = Quaternion.coerce(p), Quaternion.coerce(q)
    if same_slice(p, q):
        return float((q - p).norm())
    d = float(q.w - p.w)
    return math.hypot(d, float(q.im_norm()) + float(p.im_norm()))


def sigma_ball_contains(p, r: float, q) -> bool:
    if r <= 0:
        raise NonpositiveRadius(f"radius {r} <= 0")
    return sigma_distance(p, q) < r


def dist_to_slice(J: ImaginaryUnit, I: ImaginaryUnit) -> float:
    """Euclidean distance in R^4 from J to the plane C_I."""
    c = float(J.dot(I))
    return math.sqrt(max(0.0, 1.0 - c * c))


# ---------------------------------------------------------------------------
# phi: S -> [0, 1] selecting the cut direction on each slice


class Phi:
    """Continuous map from imaginary units to [0, 1]."""

    def __call__(self, unit: ImaginaryUnit) -> float:  # pragma: no cover - abstract
        raise NotImplementedError

    def to_json(self) -> dict:  # pragma: no cover - abstract
        raise NotImplementedError


@dataclass(frozen=True)
class PhiDistance(Phi):
    """phi(K) = |K - J| / 2."""

    J: ImaginaryUnit

    def __call__(self, unit):
        return float((unit - self.J).norm()) / 2.0

    def to_json(self):
        return {"kind": "distance", "J": list(self.J.vec())}


@dataclass(frozen=True)
class PhiConstant(Phi):
    value: float

    def __call__(self, unit):
        return float(self.value)

    def to_json(self):
        return {"kind": "constant", "value": self.value}


@dataclass(frozen=True)
class PhiTable(Phi):
    """Tabulated phi, linear in the angle between the argument and J."""

    J: ImaginaryUnit
    angles: tuple[float, ...]
    values: tuple[float, ...]

    @classmethod
    def from_samples(cls, J: ImaginaryUnit, samples: Sequence[tuple[ImaginaryUnit, float]]) -> "PhiTable":
        pairs = sorted((_angle(u, J), float(v)) for u, v in samples)
        if not pairs:
            raise ValueError("empty phi table")
        for _, v in pairs:
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"phi value {v} outside [0, 1]")
        return cls(J, tuple(a for a, _ in pairs), tuple(v for _, v in pairs))

    def __call__(self, unit):
        return float(np.interp(_angle(unit, self.J), self.angles, self.values))

    def to_json(self):
        return {"kind": "table", "J": list(self.J.vec()), "angles": list(self.angles), "values": list(self.values)}


def _angle(u: ImaginaryUnit, J: ImaginaryUnit) -> float:
    return math.acos(max(-1.0, min(1.0, float(u.dot(J)))))


def cut_angle(s: float) -> float:
    """Angle to the positive real axis of the cut ray for parameter s."""
    return math.pi / 4 + s * math.pi / 2


def ray_distance(x: float, y: float, alpha: float) -> float:
    """Distance from (x, y) to the ray (0, 1/2) + lam (cos a, sin a), lam >= 0."""
    dx, dy = x, y - 0.5
    c, s = math.cos(alpha), math.sin(alpha)
    lam = dx * c + dy * s
    if lam <= 0.0:
        return math.hypot(dx, dy)
    return abs(dx * s - dy * c)


def segment_ray_hits(p0: tuple, p1: tuple, alpha: float) -> list[float]:
    """Segment parameters s in [0, 1] where p0 + s (p1 - p0) meets the cut ray.

    Always includes the point of closest approach to the apex so that a
    segment grazing the apex is probed there.
    """
    ax, ay = 0.0, 0.5
    dx, dy = math.cos(alpha), math.sin(alpha)
    ex, ey = p1[0] - p0[0], p1[1] - p0[1]
    wx, wy = ax - p0[0], ay - p0[1]
    hits: list[float] = []
    ee = ex * ex + ey * ey
    if ee > 0.0:
        hits.append(min(1.0, max(0.0, (wx * ex + wy * ey) / ee)))
    den = ex * dy - ey * dx
    if abs(den) > 1e-15:
        s = (wx * dy - wy * dx) / den
        lam = (wx * ey - wy * ex) / den
        if -1e-12 <= s <= 1 + 1e-12 and lam >= -1e-12:
            hits.append(min(1.0, max(0.0, s)))
    elif abs(wx * dy - wy * dx) <= 1e-15:
        # collinear with the ray's line: first parameter with lam >= 0
        lam0 = -(wx * dx + wy * dy)
        lam1 = lam0 + ex * dx + ey * dy
        if lam0 >= 0.0:
            hits.append(0.0)
        elif lam1 >= 0.0:
            hits.append(-lam0 / (lam1 - lam0))
    return hits


# ---------------------------------------------------------------------------
# SliceSet


@dataclass(frozen=True, eq=False)
class SliceSet:
    """A subset of H given by membership on canonical slice coordinates."""

    descriptor: dict
    member: Member = field(repr=False)
    crossing_fn: Optional[Crossings] = field(default=None, repr=False)

    def contains_coords(self, unit: ImaginaryUnit, x: float, y: float) -> bool:
        """Membership of x + y*unit; any sign of y is accepted."""
        if y == 0 or abs(y) <= tolerances().zero:
            return bool(self.member(I_UNIT, float(x), 0.0))
        if y < 0:
            return bool(self.member(-unit, float(x), float(-y)))
        return bool(self.member(unit, float(x), float(y)))

    def contains(self, q) -> bool:
        q = Quaternion.coerce(q)
        u = unit_of(q)
        if u is None:
            return self.contains_coords(I_UNIT, float(q.w), 0.0)
        return self.contains_coords(u, float(q.w), float(q.im_norm()))

    __contains__ = contains

    def crossings(self, unit: ImaginaryUnit, p0: tuple, p1: tuple) -> list[float]:
        """Extra probe parameters for the segment p0 -> p1 in the upper half of C_unit."""
        if self.crossing_fn is None:
            return []
        return list(self.crossing_fn(unit, p0, p1))

    @property
    def name(self) -> str:
        return self.descriptor["type"]

    # combinators
    def __invert__(self) -> "SliceSet":
        return complement(self)

    def __or__(self, other: "SliceSet") -> "SliceSet":
        return union(self, other)

    def __and__(self, other: "SliceSet") -> "SliceSet":
        return intersection(self, other)


def set_contains(S: SliceSet, q) -> bool:
    return S.contains(q)


def _q(unit, x, y) -> Quaternion:
    return embed(unit, x, y)


def euclidean_ball(center, r: float) -> SliceSet:
    if r <= 0:
        raise NonpositiveRadius(f"radius {r} <= 0")
    c = Quaternion.coerce(center).to_float()
    return SliceSet(
        {"type": "EuclideanBall", "center": list(c), "r": float(r)},
        lambda u, x, y: float((_q(u, x, y) - c).norm()) < r,
    )


def slice_ball(I: ImaginaryUnit, center: complex, r: float) -> SliceSet:
    """Disk B_I(center, r) inside the single slice C_I; ``center`` in C_I coordinates."""
    if r <= 0:
        raise NonpositiveRadius(f"radius {r} <= 0")
    cx, cy = complex(center).real, complex(center).imag
    tol = tolerances().unit

    def member(u, x, y):
        if y == 0.0:
            return math.hypot(x - cx, cy) < r
        c = float(u.dot(I))
        if c >= 1 - tol:
            return math.hypot(x - cx, y - cy) < r
        if c <= -1 + tol:
            return math.hypot(x - cx, -y - cy) < r
        return False

    return SliceSet({"type": "SliceBall", "I": list(I.vec()), "center": [cx, cy], "r": float(r)}, member)


def sigma_ball(p, r: float) -> SliceSet:
    if r <= 0:
        raise NonpositiveRadius(f"radius {r} <= 0")
    p = Quaternion.coerce(p).to_float()
    return SliceSet(
        {"type": "SigmaBall", "p": list(p), "r": float(r)},
        lambda u, x, y: sigma_distance(p, _q(u, x, y)) < r,
    )


def ellipse_book(I: ImaginaryUnit) -> SliceSet:
    """Union over J of the ellipses x^2 + y^2 / dist(J, C_I) < 1 (disks on C_I)."""

    def member(u, x, y):
        d = dist_to_slice(u, I)
        if d <= tolerances().zero:
            return x * x + y * y < 1.0
        return x * x + y * y / d < 1.0

    return SliceSet({"type": "EllipseBook", "I": list(I.vec())}, member)


def dumbbell(I: ImaginaryUnit) -> SliceSet:
    """B(0,2) u B(6,2) u {q : dist(q - I, [0, 6]) < 1/2}."""

    def member(u, x, y):
        q = _q(u, x, y)
        if float(q.norm()) < 2.0 or float((q - 6.0).norm()) < 2.0:
            return True
        v = q - I
        xr = min(6.0, max(0.0, float(v.w)))
        return math.hypot(float(v.w) - xr, float(v.im_norm())) < 0.5

    return SliceSet({"type": "Dumbbell", "I": list(I.vec())}, member)


def half_slice(I: ImaginaryUnit) -> SliceSet:
    """The open upper half-plane {x + yI : y > 0} of C_I."""
    tol = tolerances().unit
    return SliceSet(
        {"type": "HalfSlice", "I": list(I.vec())},
        lambda u, x, y: y > 0.0 and float(u.dot(I)) >= 1 - tol,
    )


def ray_complement(phi: Phi, J: ImaginaryUnit) -> SliceSet:
    """H minus the cut rays I/2 + lam e^{I alpha(I)}, alpha = pi/4 + phi(I) pi/2.

    ``J`` names the base unit of the construction; membership itself only
    depends on phi.
    """

    def member(u, x, y):
        if y == 0.0:
            return True
        return ray_distance(x, y, cut_angle(phi(u))) > tolerances().ray

    def crossings(u, p0, p1):
        return segment_ray_hits(p0, p1, cut_angle(phi(u)))

    return SliceSet({"type": "RayComplement", "phi": phi.to_json(), "J": list(J.vec())}, member, crossings)


def ray_complement_tilde(phi: Phi, J: ImaginaryUnit) -> SliceSet:
    """ray_complement(phi, J) with the cut of the slice through -J restored."""
    base = ray_complement(phi, J)
    mJ = -J
    tol = tolerances().unit

    def member(u, x, y):
        if base.member(u, x, y):
            return True
        return float(u.dot(mJ)) >= 1 - tol

    return SliceSet(
        {"type": "RayComplementTilde", "phi": phi.to_json(), "J": list(J.vec())},
        member,
        base.crossing_fn,
    )


def _merge_crossings(sets: Sequence[SliceSet]) -> Optional[Crossings]:
    fns = [s.crossing_fn for s in sets if s.crossing_fn is not None]
    if not fns:
        return None
    return lambda u, p0, p1: [s for f in fns for s in f(u, p0, p1)]


def complement(S: SliceSet) -> SliceSet:
    return SliceSet(
        {"type": "Complement", "of": S.descriptor},
        lambda u, x, y: not S.member(u, x, y),
        S.crossing_fn,
    )


def union(*sets: SliceSet) -> SliceSet:
    return SliceSet(
        {"type": "Union", "of": [s.descriptor for s in sets]},
        lambda u, x, y: any(s.member(u, x, y) for s in sets),
        _merge_crossings(sets),
    )


def intersection(*sets: SliceSet) -> SliceSet:
    return SliceSet(
        {"type": "Intersection", "of": [s.descriptor for s in sets]},
        lambda u, x, y: all(s.member(u, x, y) for s in sets),
        _merge_crossings(sets),
    )


def from_oracle(name: str, member: Member, **params: Any) -> SliceSet:
    return SliceSet({"type": name, **params}, member)


# ---------------------------------------------------------------------------
# sampled probes


def _slice_coords(q: Quaternion, I: ImaginaryUnit) -> tuple[float, float]:
    """Coordinates (x, y) of q in C_I (y signed along I); NotOnSlice otherwise."""
    u = unit_of(q)
    if u is None:
        return float(q.w), 0.0
    c = float(u.dot(I))
    if abs(abs(c) - 1.0) > 1e-9:
        raise NotOnSlice(f"{tuple(q)} is not in C_I")
    return float(q.w), math.copysign(float(q.im_norm()), c)


def _largest_radius(ok: Callable[[float], bool], r_max: float, n_scan: int = 64, n_bisect: int = 40) -> float:
    """Sup of rho <= r_max with ok(rho') for every scanned rho' <= rho."""
    good = 0.0
    for k in range(1, n_scan + 1):
        rho = r_max * k / n_scan
        if not ok(rho):
            lo, hi = good, rho
            for _ in range(n_bisect):
                mid = 0.5 * (lo + hi)
                if ok(mid):
                    lo = mid
                else:
                    hi = mid
            return lo
        good = rho
    return r_max


def slice_inradius(S: SliceSet, q, I: ImaginaryUnit, r_max: float, n_probe: int = 64) -> float:
    """Largest rho <= r_max whose circle samples in C_I around q all lie in S."""
    q = Quaternion.coerce(q)
    x0, y0 = _slice_coords(q, I)
    if not S.contains(q):
        raise NotInSet(f"{tuple(q)} is not in the set")
    angles = [2 * math.pi * k / n_probe for k in range(n_probe)]
    trig = [(math.cos(a), math.sin(a)) for a in angles]

    def ok(rho):
        return all(S.contains_coords(I, x0 + rho * c, y0 + rho * s) for c, s in trig)

    return _largest_radius(ok, r_max)


def _sphere_directions(n: int, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((n, 4))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return np.vstack([v, np.eye(4), -np.eye(4)])


def _slice_directions(units: Sequence[ImaginaryUnit], n: int) -> np.ndarray:
    """Unit vectors cos(t) + sin(t) I of R^4 for each I and n angles t."""
    t = 2 * np.pi * np.arange(n) / n
    rows = []
    for u in units:
        v = np.asarray(u.vec(), dtype=float)
        rows.append(np.column_stack([np.cos(t), np.outer(np.sin(t), v)]))
    return np.vstack(rows) if rows else np.empty((0, 4))


def euclidean_inradius(
    S: SliceSet, q, r_max: float, n_probe: int = 64, slice_units: Sequence[ImaginaryUnit] = ()
) -> float:
    """Largest rho <= r_max with sampled points of the R^4 sphere S(q, rho) inside S.

    Besides random directions, the circles of radius rho in C_q (and in every
    C_I of ``slice_units``) are probed, so the estimate never exceeds the
    slice inradius on those slices.
    """
    q = Quaternion.coerce(q).to_float()
    units = list(slice_units)
    u = unit_of(q)
    if u is not None:
        units.append(u)
    dirs = np.vstack([_sphere_directions(n_probe), _slice_directions(units, n_probe)])
    base = q.to_numpy()

    def ok(rho):
        return all(S.contains(Quaternion(*(base + rho * d))) for d in dirs)

    return _largest_radius(ok, r_max)


def sigma_inradius(
    S: SliceSet, q, r_max: float, n_probe: int = 64, seed: int = 0, slice_units: Sequence[ImaginaryUnit] = ()
) -> float:
    """Largest rho <= r_max with sampled points at sigma-distance rho from q inside S."""
    q = Quaternion.coerce(q).to_float()
    u = unit_of(q)
    if u is None:
        # sigma-spheres about real points are Euclidean spheres
        return euclidean_inradius(S, q, r_max, n_probe, slice_units)
    a, b = float(q.w), float(q.im_norm())
    rng = np.random.default_rng(seed)
    others = []
    for _ in range(8):
        v = rng.standard_normal(3)
        others.append(ImaginaryUnit.normalized(*v))
    angles = [2 * math.pi * k / n_probe for k in range(n_probe)]

    def ok(rho):
        for t in angles:
            if not S.contains_coords(u, a + rho * math.cos(t), b + rho * math.sin(t)):
                return False
        for K in others:
            for t in angles[: n_probe // 2]:
                # off-slice points of the sigma-sphere: (x-a)^2 + (y+b)^2 = rho^2, y > 0
                x, y = a + rho * math.cos(t), -b + rho * math.sin(t)
                if y > 0 and not S.contains_coords(K, x, y):
                    return False
        return True

    return _largest_radius(ok, r_max)


@dataclass(frozen=True)
class ProbeRecord:
    point: tuple[float, ...]
    unit: tuple[float, ...]
    slice_inradius: float
    euclidean_inradius: float
    sigma_inradius: float


@dataclass(frozen=True)
class TopologyReport:
    records: tuple[ProbeRecord, ...]
    probe_tol: float
    n_probe: int

    @property
    def slice_dominates_euclidean(self) -> bool:
        return all(r.slice_inradius >= r.euclidean_inradius - self.probe_tol for r in self.records)

    @property
    def euclidean_interior_everywhere(self) -> bool:
        return all(r.euclidean_inradius > self.probe_tol for r in self.records)

    @property
    def sigma_interior_everywhere(self) -> bool:
        return all(r.sigma_inradius > self.probe_tol for r in self.records)

    def summary(self) -> dict:
        return {
            "slice_dominates_euclidean": self.slice_dominates_euclidean,
            "euclidean_interior_everywhere": self.euclidean_interior_everywhere,
            "sigma_interior_everywhere": self.sigma_interior_everywhere,
        }


def topology_report(
    S: SliceSet,
    probes: Sequence[tuple[Quaternion, ImaginaryUnit]],
    r_max: float = 1.0,
    n_probe: int = 64,
    probe_tol: float = 1e-3,
) -> TopologyReport:
    records = []
    for q, I in probes:
        q = Quaternion.coerce(q)
        records.append(
            ProbeRecord(
                tuple(float(c) for c in q),
                tuple(float(c) for c in I.vec()),
                slice_inradius(S, q, I, r_max, n_probe),
                euclidean_inradius(S, q, r_max, n_probe, (I,)),
                sigma_inradius(S, q, r_max, n_probe, slice_units=(I,)),
            )
        )
    return TopologyReport(tuple(records), probe_tol, n_probe)


def is_real_connected_sampled(S: SliceSet, x_grid: Sequence[float]) -> bool:
    """At most one maximal run of members along the sorted real grid."""
    xs = list(x_grid)
    if len(xs) < 2 or any(b < a for a, b in zip(xs, xs[1:])):
        raise ValueError("x_grid must be sorted with at least two points")
    runs, inside = 0, False
    for x in xs:
        m = S.contains_coords(I_UNIT, x, 0.0)
        if m and not inside:
            runs += 1
        inside = m
    return runs <= 1


class PathContainment(NamedTuple):
    contained: bool
    exit_t: Optional[float]

    def __bool__(self) -> bool:
        return self.contained


def _split_at_axis(p0: tuple, p1: tuple) -> list[tuple[float, float, tuple, tuple]]:
    """Pieces (s0, s1, a, b) of a segment on one side of the real axis."""
    y0, y1 = p0[1], p1[1]
    if y0 * y1 < 0:
        s = y0 / (y0 - y1)
        m = (p0[0] + s * (p1[0] - p0[0]), 0.0)
        return [(0.0, s, p0, m), (s, 1.0, m, p1)]
    return [(0.0, 1.0, p0, p1)]


def path_probe_params(S: SliceSet, gamma: ComplexPath, I: ImaginaryUnit, n_path: int = 1024) -> np.ndarray:
    """Sorted sample parameters plus every parameter where a lifted segment meets a cut of S."""
    ts = list(gamma.sample(n_path)[0])
    if S.crossing_fn is not None:
        for seg in gamma.segments():
            for s0, s1, a, b in _split_at_axis(seg.p0, seg.p1):
                lower = a[1] < 0 or b[1] < 0
                unit = -I if lower else I
                a2 = (a[0], abs(a[1]))
                b2 = (b[0], abs(b[1]))
                for s in S.crossings(unit, a2, b2):
                    ts.append(seg.t_of(s0 + s * (s1 - s0)))
    return np.unique(np.clip(np.asarray(ts, dtype=float), 0.0, 1.0))


def path_in_set(S: SliceSet, gamma: ComplexPath, I: ImaginaryUnit, n_path: int = 1024) -> PathContainment:
    """Sampled containment of the lift gamma^I in S, with the first exit parameter."""
    for t in path_probe_params(S, gamma, I, n_path):
        x, y = gamma.point(t)
        if not S.contains_coords(I, x, y):
            return PathContainment(False, float(t))
    return PathContainment(True, None)
