import math

import numpy as np
import pytest

from slicelab.counterexample import (
    BranchFunction,
    branch_residual,
    classical_residual,
    counterexample_report,
    cut_jump,
    psi_phi_eval,
    psi_phi_model,
    psi_s_eval,
    branch_closed_forms,
)
from slicelab.errors import OnCut, OutOfDomain, UnitOutOfBand
from slicelab.geometry import PhiConstant, PhiDistance
from slicelab.quaternion import I_UNIT, J_UNIT, K_UNIT, ImaginaryUnit, Quaternion, SlicePoint, embed, exp_unit, orthogonal_unit, random_unit

i, j, k = I_UNIT, J_UNIT, K_UNIT
S_VALUES = (0.0, 0.25, 0.75, 1.0)


def close(a, b, tol=1e-12):
    return float((Quaternion.coerce(a) - Quaternion.coerce(b)).norm()) <= tol


@pytest.mark.parametrize("s", S_VALUES)
def test_branch_values(s):
    B = BranchFunction(j, s)
    assert close(B(-j), math.sqrt(3) * exp_unit(j, -math.pi / 4))
    sign = -1.0 if s < 0.5 else 1.0
    assert close(B(j), sign * exp_unit(j, math.pi / 4))
    assert close(B(embed(j, 1.0, 0.5)), math.sqrt(2))
    for key, val in branch_closed_forms(j, s).items():
        assert val.norm() > 0, key


def test_branch_squares_to_its_argument():
    rng = np.random.default_rng(0)
    for s in S_VALUES:
        B = BranchFunction(k, s)
        for _ in range(100):
            z = complex(*rng.uniform(-2, 2, size=2))
            if B.on_cut(z):
                continue
            assert branch_residual(B, z) <= 1e-12


def test_branch_rejects_cut_and_foreign_points():
    B = BranchFunction(j, 0.0)
    with pytest.raises(OnCut):
        psi_s_eval(B, 0.5j)  # the cut apex J/2
    with pytest.raises(OnCut):
        psi_s_eval(B, 1.0 + 1.5j)
    with pytest.raises(OutOfDomain):
        B(embed(i, 0.0, 1.0))
    with pytest.raises(ValueError):
        BranchFunction(j, 1.5)


def test_branch_accepts_minus_j_slice():
    B = BranchFunction(j, 0.25)
    assert close(B(embed(-j, 0.3, 0.4)), B(complex(0.3, -0.4)))


def test_psi_phi_restricts_to_psi_on_j():
    phi = PhiDistance(j)
    B = BranchFunction(j, phi(j))
    rng = np.random.default_rng(1)
    for _ in range(50):
        x, y = rng.uniform(-1.5, 1.5), rng.uniform(0.05, 1.5)
        if B.on_cut(complex(x, y)):
            continue
        assert close(psi_phi_eval(phi, j, SlicePoint.of(j, x, y)), B(complex(x, y)))


def test_psi_phi_real_points_independent_of_phi():
    v = psi_phi_eval(PhiDistance(j), j, 3.0)
    for c in (0.0, 0.3, 1.0):
        assert close(psi_phi_eval(PhiConstant(c), j, 3.0), v)
    assert close(v * v, embed(j, 6.0, -1.0))


def test_orthogonal_unit_value_and_residual():
    phi = PhiDistance(j)
    I = orthogonal_unit(j)
    assert phi(I) == pytest.approx(math.sqrt(2) / 2)
    IJ = I * j
    expected = 0.5 * (1 - IJ) * exp_unit(j, math.pi / 4) + 0.5 * (1 + IJ) * math.sqrt(3) * exp_unit(j, -math.pi / 4)
    assert close(psi_phi_eval(phi, j, I), expected)
    (rec,) = counterexample_report(j, [I])
    assert rec.residual_norm == pytest.approx(math.sqrt(2), abs=1e-12)
    assert rec.agreement <= 1e-12
    assert classical_residual(phi, j, I) == pytest.approx(math.sqrt(2), abs=1e-12)


def test_residual_matches_closed_form_across_band():
    rng = np.random.default_rng(2)
    phi = PhiDistance(j)
    units = []
    while len(units) < 50:
        u = random_unit(rng)
        if 0.5 < phi(u) < 1.0:
            units.append(u)
    for rec in counterexample_report(j, units):
        assert rec.agreement <= 1e-12
        assert rec.residual_norm == pytest.approx(float((1 - rec.unit * j).norm()), abs=1e-12)


def test_out_of_band_units_rejected():
    with pytest.raises(UnitOutOfBand):
        counterexample_report(j, [j])
    with pytest.raises(UnitOutOfBand):
        counterexample_report(j, [ImaginaryUnit.normalized(0.2, 1.0, 0.0)])


def test_constant_phi_has_no_residual():
    phi = PhiConstant(0.7)
    rng = np.random.default_rng(3)
    for _ in range(20):
        assert classical_residual(phi, j, random_unit(rng)) <= 1e-12


@pytest.mark.parametrize("lam", (0.5, 1.0, 2.0))
@pytest.mark.parametrize("s", S_VALUES)
def test_cut_jump(lam, s):
    B = BranchFunction(j, s)
    cj = cut_jump(B, lam)
    expected = 2 * math.sqrt(2 * lam) * exp_unit(j, B.alpha / 2)
    assert close(cj.jump, expected, 1e-6)
    # the jump stabilises as the probes approach the cut
    gaps = [float((b - a - expected).norm()) for b, a in zip(cj.below, cj.above)]
    assert gaps == sorted(gaps, reverse=True)


def test_tilde_model_defined_on_minus_j_cut():
    phi = PhiDistance(j)
    B = BranchFunction(j, phi(-j))
    cut_pt = complex(0.0, 0.5) + 0.6 * complex(math.cos(B.alpha), math.sin(B.alpha))
    P = SlicePoint.of(-j, cut_pt.real, cut_pt.imag)
    with pytest.raises(OutOfDomain):
        psi_phi_eval(phi, j, P)
    v = psi_phi_model(phi, j, tilde=True).at(-j, cut_pt.real, cut_pt.imag)
    eps = 1e-7
    near = SlicePoint.of(-j, cut_pt.real + eps, cut_pt.imag)
    assert close(v, psi_phi_eval(phi, j, near), 1e-5)
