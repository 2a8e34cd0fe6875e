"""Piecewise-linear paths in C with a real initial point, and their slice lifts."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import InvalidPath
from .quaternion import ImaginaryUnit, Quaternion, embed

__all__ = ["ComplexPath", "Segment", "lift_path"]


@dataclass(frozen=True)
class Segment:
    t0: float
    t1: float
    p0: tuple[float, float]
    p1: tuple[float, float]

    def at(self, s: float) -> tuple[float, float]:
        return (self.p0[0] + s * (self.p1[0] - self.p0[0]), self.p0[1] + s * (self.p1[1] - self.p0[1]))

    def t_of(self, s: float) -> float:
        return self.t0 + s * (self.t1 - self.t0)


@dataclass(frozen=True)
class ComplexPath:
    """Polyline gamma: [0, 1] -> C parameterized proportionally to arc length.

    By default the path lives in the closed upper half-plane and starts on
    the real axis.  ``strict_upper`` additionally requires gamma(0, 1] to
    avoid R; ``allow_lower`` admits general paths (used by the reduction
    to upper paths in the path-slice consistency check).
    """

    vertices: tuple[tuple[float, float], ...]
    strict_upper: bool = False
    allow_lower: bool = False
    _cum: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        verts = tuple((float(x), float(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) < 2:
            raise InvalidPath("a path needs at least two vertices")
        if verts[0][1] != 0.0:
            raise InvalidPath("gamma(0) must be real")
        if not self.allow_lower and any(y < 0 for _, y in verts):
            raise InvalidPath("vertices must lie in the closed upper half-plane")
        if self.strict_upper and any(y <= 0 for _, y in verts[1:]):
            raise InvalidPath("gamma(0, 1] must lie in the open upper half-plane")
        cum = [0.0]
        for (x0, y0), (x1, y1) in zip(verts, verts[1:]):
            cum.append(cum[-1] + math.hypot(x1 - x0, y1 - y0))
        if cum[-1] <= 0.0:
            raise InvalidPath("path has zero length")
        object.__setattr__(self, "_cum", tuple(c / cum[-1] for c in cum))

    @classmethod
    def segment(cls, a: complex, b: complex, **kw) -> "ComplexPath":
        return cls(((a.real, a.imag), (b.real, b.imag)), **kw)

    @classmethod
    def from_points(cls, pts: Sequence[complex], **kw) -> "ComplexPath":
        return cls(tuple((complex(p).real, complex(p).imag) for p in pts), **kw)

    @property
    def length_fractions(self) -> tuple[float, ...]:
        return self._cum

    def segments(self) -> Iterator[Segment]:
        for k in range(len(self.vertices) - 1):
            if self._cum[k + 1] > self._cum[k]:
                yield Segment(self._cum[k], self._cum[k + 1], self.vertices[k], self.vertices[k + 1])

    def point(self, t: float) -> tuple[float, float]:
        t = min(max(float(t), 0.0), 1.0)
        for seg in self.segments():
            if t <= seg.t1:
                return seg.at((t - seg.t0) / (seg.t1 - seg.t0))
        return self.vertices[-1]

    def end(self) -> tuple[float, float]:
        return self.vertices[-1]

    def sample(self, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``n`` parameters evenly spaced in [0, 1] with the corresponding x, y."""
        ts = np.linspace(0.0, 1.0, max(int(n), 2))
        xs = np.interp(ts, self._cum, [v[0] for v in self.vertices])
        ys = np.interp(ts, self._cum, [v[1] for v in self.vertices])
        return ts, xs, ys

    def to_json(self) -> list[list[float]]:
        return [[x, y] for x, y in self.vertices]


def lift_path(gamma: ComplexPath, unit: ImaginaryUnit, n: int = 1024) -> tuple[np.ndarray, list[Quaternion]]:
    """Sample gamma^I = P_I o gamma at ``n`` parameters."""
    ts, xs, ys = gamma.sample(n)
    return ts, [embed(unit, float(x), float(y)) for x, y in zip(xs, ys)]
