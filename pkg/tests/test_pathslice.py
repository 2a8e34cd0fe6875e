import math

import numpy as np
import pytest

from slicelab.counterexample import WITNESS_PATH, omega_phi_tilde, psi_phi_model
from slicelab.errors import DegeneratePair, InvalidPath, LiftNotContained, PremiseFailed
from slicelab.extension import HolomorphicSliceData, extend_from_disk
from slicelab.geometry import PhiDistance, euclidean_ball, sigma_ball
from slicelab.paths import ComplexPath, lift_path
from slicelab.pathslice import (
    SliceRegularModel,
    constant_model,
    continuity_probe,
    default_candidates,
    extension_model,
    lifting_witness_search,
    path_repformula,
    path_slice_consistency,
    polynomial_model,
)
from slicelab.quaternion import I_UNIT, J_UNIT, K_UNIT, ImaginaryUnit, Quaternion, embed, orthogonal_unit, random_quaternion, random_unit

i, j, k = I_UNIT, J_UNIT, K_UNIT
BALL = euclidean_ball(0.0, 2.0)


def close(a, b, tol=1e-12):
    return float((Quaternion.coerce(a) - Quaternion.coerce(b)).norm()) <= tol


def near_j(angle: float) -> ImaginaryUnit:
    return ImaginaryUnit.normalized(0.0, math.cos(angle), math.sin(angle))


# paths


def test_path_validation():
    with pytest.raises(InvalidPath):
        ComplexPath(((0.0, 0.0),))
    with pytest.raises(InvalidPath):
        ComplexPath(((0.0, 0.5), (1.0, 1.0)))
    with pytest.raises(InvalidPath):
        ComplexPath(((0.0, 0.0), (1.0, -1.0)))
    with pytest.raises(InvalidPath):
        ComplexPath(((0.0, 0.0), (0.0, 0.0)))
    with pytest.raises(InvalidPath):
        ComplexPath(((0.0, 0.0), (1.0, 0.0)), strict_upper=True)
    ComplexPath(((0.0, 0.0), (1.0, -1.0)), allow_lower=True)


def test_arc_length_parameter():
    g = ComplexPath(((0.0, 0.0), (1.0, 0.0), (1.0, 3.0)))
    assert g.point(0.25) == pytest.approx((1.0, 0.0))
    assert g.point(0.5) == pytest.approx((1.0, 1.0))
    assert g.end() == (1.0, 3.0)


def test_lift_path_examples():
    ts, pts = lift_path(ComplexPath.segment(0j, 1j), j, 5)
    assert close(pts[0], 0.0) and close(pts[-1], j)
    u = ImaginaryUnit.normalized(1, 1, 0)
    g = ComplexPath(((0.0, 0.0), (-0.2, 0.0), (-0.2, 0.8)))
    ts, pts = lift_path(g, u, 33)
    for t, q in zip(ts, pts):
        x, y = g.point(t)
        assert close(q, embed(u, x, y))
    for v in (i, j, u):
        assert close(lift_path(g, v, 3)[1][0], 0.0)


# path representation formula


def test_path_repformula_trivial_and_polynomial():
    rng = np.random.default_rng(0)
    f = polynomial_model([0.0, 0.0, 0.0, 1.0], BALL)
    g = ComplexPath.segment(0j, 0.5 + 0.5j)
    assert path_repformula(f, g, j, j, k).residual == 0.0
    for _ in range(5):
        I, J, K = random_unit(rng), random_unit(rng), random_unit(rng)
        assert path_repformula(f, g, I, J, K, 256).residual <= 1e-10
    with pytest.raises(DegeneratePair):
        path_repformula(f, g, i, j, j)


def test_path_repformula_requires_contained_lifts():
    f = polynomial_model([1.0], sigma_ball(i, 1.0))
    with pytest.raises(LiftNotContained) as err:
        path_repformula(f, ComplexPath.segment(0j, 0.5j), i, j, k)
    assert err.value.t == 0.0


def test_path_repformula_for_psi_phi():
    f = psi_phi_model(PhiDistance(j), j)
    g = ComplexPath(((0.0, 0.0), (1.0, 0.0), (1.0, 0.3)))
    rng = np.random.default_rng(1)
    for _ in range(5):
        I = random_unit(rng)
        assert path_repformula(f, g, I, j, near_j(0.3), 256).residual <= 1e-9


# consistency


def test_consistency_constant_and_polynomial():
    g = ComplexPath(((0.0, 0.0), (0.3, 0.2), (0.1, 0.7)))
    units = [j, k, i, ImaginaryUnit.normalized(1, 2, 3)]
    rep = path_slice_consistency(constant_model(Quaternion(1, 2, 3, 4), BALL), g, units)
    assert rep.max_defect <= 1e-15 and rep.passed
    rng = np.random.default_rng(2)
    f = polynomial_model([random_quaternion(rng) for _ in range(5)], BALL)
    assert path_slice_consistency(f, g, units).passed


def test_consistency_psi_phi_at_height():
    f = psi_phi_model(PhiDistance(j), j)
    g = ComplexPath(((0.0, 0.0), (1.0, 0.0), (1.0, 0.3)))
    rng = np.random.default_rng(3)
    units = [j, near_j(0.5)] + [random_unit(rng) for _ in range(8)]
    assert path_slice_consistency(f, g, units).max_defect <= 1e-9


def test_consistency_detects_non_path_slice():
    rng = np.random.default_rng(4)
    table = {}

    def ev(P):
        key = tuple(round(float(c), 9) for c in P.unit.vec())
        if key not in table:
            table[key] = random_quaternion(rng)
        return table[key]

    f = SliceRegularModel(BALL, ev, "random per slice")
    g = ComplexPath(((0.0, 0.0), (0.2, 0.5)))
    rep = path_slice_consistency(f, g, [j, k, i, ImaginaryUnit.normalized(1, 1, 1)])
    assert rep.max_defect >= 0.1 and not rep.passed


def test_consistency_with_lower_half_path():
    rng = np.random.default_rng(5)
    f = polynomial_model([random_quaternion(rng) for _ in range(4)], BALL)
    g = ComplexPath(((0.0, 0.0), (0.3, 0.4), (0.5, -0.3)), allow_lower=True)
    rep = path_slice_consistency(f, g, [j, k, i, near_j(1.0)])
    assert rep.passed


def test_consistency_real_endpoint():
    f = polynomial_model([0.0, 1.0, 1.0], BALL)
    g = ComplexPath(((0.0, 0.0), (0.5, 0.5), (1.0, 0.0)))
    rep = path_slice_consistency(f, g, [j, k, i])
    assert rep.passed
    assert close(rep.q_gamma[0], 2.0) and close(rep.q_gamma[1], 0.0)


def test_consistency_needs_three_units():
    with pytest.raises(ValueError):
        path_slice_consistency(constant_model(1.0, BALL), ComplexPath.segment(0j, 0.5j), [j, k])


def test_extension_model_is_path_slice():
    rng = np.random.default_rng(6)
    E = extend_from_disk(HolomorphicSliceData.series(i, 0j, 1.0, [random_quaternion(rng) for _ in range(5)]))
    f = extension_model(E)
    g = ComplexPath(((0.0, 0.0), (0.2, 0.3), (-0.1, 0.5)))
    assert path_slice_consistency(f, g, [i, j, k, near_j(0.4)]).passed


# witness search


def test_default_candidates():
    cands = default_candidates(j, 64, 32, seed=1)
    assert len(cands) == 96
    assert all(abs(float((c - j).norm())) > 1e-3 for c in cands[:64])
    assert all(abs(float((c + j).norm())) > 1e-3 for c in cands[:64])


def test_witness_on_ray_complement():
    S = omega_phi_tilde(PhiDistance(j), j)
    w = lifting_witness_search(S, WITNESS_PATH, j, near_j(0.1))
    assert w is not None and 0.0 < w.exit_t <= 1.0
    assert 1.0 < float((w.unit - j).norm()) < 2.0


def test_orthogonal_witness_on_shortened_path():
    # the I-perp-J cut crosses y = 0.784 at x ~ -0.0958
    S = omega_phi_tilde(PhiDistance(j), j)
    g = ComplexPath(((0.0, 0.0), (-0.2, 0.0), (-0.2, 0.784), (-0.09, 0.784)))
    w = lifting_witness_search(S, g, j, near_j(0.1), [orthogonal_unit(j)])
    assert w is not None and w.unit == orthogonal_unit(j)


def test_no_witness_on_ball():
    assert lifting_witness_search(BALL, WITNESS_PATH, j, near_j(0.1)) is None


def test_premise_failure():
    S = omega_phi_tilde(PhiDistance(j), j)
    g = ComplexPath.segment(0j, 1j)  # meets the cut apex J/2
    with pytest.raises(PremiseFailed) as err:
        lifting_witness_search(S, g, j, near_j(0.1))
    assert err.value.unit == j


def test_continuity_probe_bounded_off_cut():
    f = psi_phi_model(PhiDistance(j), j)
    g = ComplexPath(((0.0, 0.0), (1.0, 0.0), (1.0, 0.3)))
    assert continuity_probe(f, i, g, 512) < 10.0
