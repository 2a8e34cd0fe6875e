"""The square-root family on slice planes with one cut ray per slice.

For a base unit J and s in [0, 1], Psi_s is the branch of sqrt(2z - J)
on C_J that is positive on J/2 + R_+ and cut along the ray leaving J/2 at
angle alpha(s) = pi/4 + s*pi/2.  In w = 2z - J the cut is the ray
arg(w) = alpha, so the branch takes arg(w) in (alpha - 2pi, alpha).

Psi_phi glues these branches slice by slice (the branch on C_I is chosen
by phi(I)); it is slice regular on the ray complement but violates the
classical two-slice formula whenever phi is not constant.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from ._config import tolerances
from .errors import OnCut, OutOfDomain, UnitOutOfBand
from .geometry import (
    Phi,
    PhiDistance,
    SliceSet,
    cut_angle,
    ray_complement,
    ray_complement_tilde,
    ray_distance,
)
from .paths import ComplexPath
from .pathslice import SliceRegularModel
from .quaternion import ImaginaryUnit, Quaternion, SlicePoint, embed, exp_unit, slice_point

__all__ = [
    "BranchFunction",
    "psi_s_eval",
    "psi_phi_eval",
    "psi_phi_model",
    "counterexample_report",
    "CounterexampleRecord",
    "cut_jump",
    "CutJump",
    "WITNESS_PATH",
    "branch_closed_forms",
    "classical_residual",
    "branch_residual",
    "omega_phi",
    "omega_phi_tilde",
]

# premise lifts for J and nearby units stay at x < 0 after leaving R
WITNESS_PATH = ComplexPath(((0.0, 0.0), (-0.2, 0.0), (-0.2, 0.784), (-0.0969, 0.784)))


@dataclass(frozen=True)
class BranchFunction:
    J: ImaginaryUnit
    s: float

    def __post_init__(self):
        if not 0.0 <= self.s <= 1.0:
            raise ValueError(f"s = {self.s} outside [0, 1]")

    @property
    def alpha(self) -> float:
        return cut_angle(self.s)

    def coords(self, z) -> complex:
        if isinstance(z, (complex, int, float)):
            return complex(z)
        P = slice_point(z)
        if P.is_real:
            return complex(float(P.x), 0.0)
        c = float(P.unit.dot(self.J))
        if abs(abs(c) - 1.0) > 1e-9:
            raise OutOfDomain("point is not in C_J")
        return complex(float(P.x), math.copysign(float(P.y), c))

    def on_cut(self, zc: complex) -> bool:
        """On gamma_s[J] (upper half) or gamma_s[-J] (its mirror in the lower half)."""
        tol = tolerances().ray
        if zc.imag > 0:
            return ray_distance(zc.real, zc.imag, self.alpha) <= tol
        if zc.imag < 0:
            return ray_distance(zc.real, -zc.imag, self.alpha) <= tol
        return False

    def branch(self, zc: complex) -> Quaternion:
        """Closed-form branch value, no cut check."""
        w = 2 * zc - 1j
        theta = cmath.phase(w)
        if theta >= self.alpha:
            theta -= 2 * math.pi
        r = math.sqrt(abs(w))
        return embed(self.J, r * math.cos(theta / 2), r * math.sin(theta / 2))

    def __call__(self, z) -> Quaternion:
        return psi_s_eval(self, z)


def psi_s_eval(B: BranchFunction, z) -> Quaternion:
    zc = B.coords(z)
    if B.on_cut(zc):
        raise OnCut(f"{zc} lies on a cut of Psi_{B.s}")
    return B.branch(zc)


def _phi_cut_hit(phi: Phi, P: SlicePoint) -> bool:
    if P.is_real:
        return False
    return ray_distance(float(P.x), float(P.y), cut_angle(phi(P.unit))) <= tolerances().ray


def psi_phi_eval(phi: Phi, J: ImaginaryUnit, P, tilde: bool = False) -> Quaternion:
    """(1 - IJ)/2 Psi_{phi(I)}(x + yJ) + (1 + IJ)/2 Psi_{phi(I)}(x - yJ) at P = x + yI, y >= 0.

    With ``tilde`` the cut of the slice through -J is part of the domain;
    there the value is the continuous limit, which the closed-form branch
    already returns because Psi_s is holomorphic across gamma_s[-J].
    """
    P = P if isinstance(P, SlicePoint) else slice_point(P)
    if _phi_cut_hit(phi, P):
        if not (tilde and float(P.unit.dot(-J)) >= 1 - tolerances().unit):
            raise OutOfDomain(f"point ({P.x}, {P.y}) on unit {P.unit.vec()} lies on its cut")
    x, y = float(P.x), float(P.y)
    B = BranchFunction(J, phi(P.unit))
    if P.is_real:
        return B.branch(complex(x, 0.0))
    IJ = P.unit * J
    a = 0.5 * (1.0 - IJ)
    b = 0.5 * (1.0 + IJ)
    return a * B.branch(complex(x, y)) + b * B.branch(complex(x, -y))


def psi_phi_model(phi: Phi, J: ImaginaryUnit, tilde: bool = False) -> SliceRegularModel:
    domain = ray_complement_tilde(phi, J) if tilde else ray_complement(phi, J)
    return SliceRegularModel(domain, lambda P: psi_phi_eval(phi, J, P, tilde), "psi_phi_tilde" if tilde else "psi_phi")


def branch_closed_forms(J: ImaginaryUnit, s: float) -> dict[str, Quaternion]:
    """Closed forms of Psi_s at -J, J and J/2 + 1."""
    at_J = -exp_unit(J, math.pi / 4) if s < 0.5 else exp_unit(J, math.pi / 4)
    return {
        "-J": math.sqrt(3.0) * exp_unit(J, -math.pi / 4),
        "J": at_J,
        "J/2+1": Quaternion(math.sqrt(2.0), 0.0, 0.0, 0.0),
    }


@dataclass(frozen=True)
class CounterexampleRecord:
    unit: ImaginaryUnit
    phi: float
    residual: Quaternion  # Psi_phi(I) minus the classical two-slice value from J, -J
    closed_form: Quaternion  # (1 - IJ) Psi_{phi(I)}(J)

    @property
    def residual_norm(self) -> float:
        return float(self.residual.norm())

    @property
    def agreement(self) -> float:
        return float((self.residual - self.closed_form).norm())


def counterexample_report(J: ImaginaryUnit, units: Sequence[ImaginaryUnit], phi: Optional[Phi] = None) -> list[CounterexampleRecord]:
    """Classical-formula residual at q = I for each unit with 1/2 < phi(I) < 1."""
    phi = PhiDistance(J) if phi is None else phi
    out = []
    for I in units:
        v = phi(I)
        if not 0.5 < v < 1.0:
            raise UnitOutOfBand(f"phi(I) = {v:.6g} outside (1/2, 1)")
        IJ = I * J
        psi_I = psi_phi_eval(phi, J, SlicePoint.of(I, 0.0, 1.0))
        psi_J = psi_phi_eval(phi, J, SlicePoint.of(J, 0.0, 1.0))
        psi_mJ = psi_phi_eval(phi, J, SlicePoint.of(-J, 0.0, 1.0))
        classical = 0.5 * (1.0 - IJ) * psi_J + 0.5 * (1.0 + IJ) * psi_mJ
        closed = (1.0 - IJ) * BranchFunction(J, v).branch(1j)
        out.append(CounterexampleRecord(I, v, psi_I - classical, closed))
    return out


def classical_residual(phi: Phi, J: ImaginaryUnit, I: ImaginaryUnit) -> float:
    """|Psi_phi(I) - [(1-IJ)/2 Psi_phi(J) + (1+IJ)/2 Psi_phi(-J)]| without band restriction."""
    IJ = I * J
    psi_I = psi_phi_eval(phi, J, SlicePoint.of(I, 0.0, 1.0))
    psi_J = psi_phi_eval(phi, J, SlicePoint.of(J, 0.0, 1.0))
    psi_mJ = psi_phi_eval(phi, J, SlicePoint.of(-J, 0.0, 1.0))
    return float((psi_I - 0.5 * (1.0 - IJ) * psi_J - 0.5 * (1.0 + IJ) * psi_mJ).norm())


@dataclass(frozen=True)
class CutJump:
    s: float
    radius: float
    alpha: float
    below: tuple[Quaternion, ...]  # Psi_s at angle alpha - 10^-m
    above: tuple[Quaternion, ...]  # Psi_s at angle alpha + 10^-m
    steps: tuple[float, ...]

    @property
    def jump(self) -> Quaternion:
        return self.below[-1] - self.above[-1]


def cut_jump(B: BranchFunction, radius: float, orders: Sequence[int] = (3, 4, 5, 6)) -> CutJump:
    """Psi_s on both sides of its cut at J/2 + radius e^{theta J}, theta = alpha -+ 10^-m."""
    alpha = B.alpha
    steps = tuple(10.0 ** (-m) for m in orders)

    def at(theta):
        return psi_s_eval(B, complex(0.0, 0.5) + radius * cmath.exp(1j * theta))

    below = tuple(at(alpha - d) for d in steps)
    above = tuple(at(alpha + d) for d in steps)
    return CutJump(B.s, radius, alpha, below, above, steps)


def branch_residual(B: BranchFunction, z) -> float:
    """|Psi_s(z)^2 - (2z - J)|."""
    zc = B.coords(z)
    v = psi_s_eval(B, zc)
    target = embed(B.J, 2 * zc.real, 2 * zc.imag - 1.0)
    return float((v * v - target).norm())


def omega_phi(phi: Phi, J: ImaginaryUnit) -> SliceSet:
    return ray_complement(phi, J)


def omega_phi_tilde(phi: Phi, J: ImaginaryUnit) -> SliceSet:
    return ray_complement_tilde(phi, J)
