"""Property-based checks of the algebraic and geometric invariants."""

import math
from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from slicelab.counterexample import BranchFunction, branch_residual, counterexample_report, psi_phi_model
from slicelab.extension import HolomorphicSliceData, extend_from_disk
from slicelab.geometry import PhiDistance, dist_to_slice, dumbbell, ellipse_book, euclidean_ball, ray_complement, sigma_ball, sigma_distance
from slicelab.paths import ComplexPath
from slicelab.pathslice import path_slice_consistency, polynomial_model
from slicelab.quaternion import (
    I_UNIT,
    J_UNIT,
    ONE,
    ImaginaryUnit,
    InterpMatrix,
    Quaternion,
    SlicePoint,
    embed,
    interp_matrix_inv,
    orthogonal_unit,
    qinv,
    rational_unit,
    split_basis,
    unit_of,
)
from slicelab.slicefun import (
    StemFunction,
    eval_from_stem,
    partition_coefficients,
    repformula_matrix,
    repformula_point,
    repformula_split,
    right_polynomial,
    stem_from_pair,
)

coord = st.floats(-3.0, 3.0, allow_nan=False)
small = st.floats(-1.0, 1.0, allow_nan=False)
quats = st.builds(Quaternion, coord, coord, coord, coord)


@st.composite
def units(draw):
    v = draw(st.tuples(small, small, small))
    n = math.sqrt(sum(c * c for c in v))
    assume(n > 0.1)
    return ImaginaryUnit.normalized(*v)


@st.composite
def separated_pair(draw, sep=0.1):
    J, K = draw(units()), draw(units())
    assume(float((J - K).norm()) > sep)
    return J, K


ints = st.integers(-5, 5)


@st.composite
def rational_units(draw):
    a, b, c = draw(ints), draw(ints), draw(ints)
    assume((a, b, c) != (0, 0, 0))
    return rational_unit(a, b, c)


def dist(a, b):
    return float((Quaternion.coerce(a) - Quaternion.coerce(b)).norm())


# algebra


@given(separated_pair())
def test_interp_inverse_is_left_inverse(pair):
    J, K = pair
    M = interp_matrix_inv(J, K) @ InterpMatrix.interpolation(J, K)
    assert M.max_deviation(InterpMatrix.identity()) <= 1e-12


@given(separated_pair())
def test_jk_identity(pair):
    J, K = pair
    D = qinv(J - K)
    assert float((D * J + K * D).norm()) <= 1e-12


@given(rational_units(), rational_units())
def test_rational_identities_are_exact(J, K):
    assume(J != K)
    D = qinv(J - K)
    assert D * J + K * D == Quaternion(0, 0, 0, 0)
    assert interp_matrix_inv(J, K) @ InterpMatrix.interpolation(J, K) == InterpMatrix.identity()
    assert all(isinstance(c, Fraction) for c in D)


@given(quats, units())
def test_split_basis_round_trip(a, I):
    J = orthogonal_unit(I)
    a1, a2 = split_basis(a, I, J)
    assert dist(a1 + a2 * J, a) <= 1e-13 * max(1.0, float(a.norm()))


@given(units(), coord, st.floats(0.01, 3.0))
def test_unit_of_embed(I, x, y):
    assert dist(unit_of(embed(I, x, y)), I) <= 1e-12


@given(quats, quats)
def test_norm_is_multiplicative(p, q):
    assert math.isclose(float((p * q).norm()), float(p.norm()) * float(q.norm()), rel_tol=1e-12, abs_tol=1e-12)


# representation formula


@given(units(), separated_pair(), quats, quats)
def test_three_forms_agree(I, pair, fJ, fK):
    J, K = pair
    a = repformula_point(I, J, K, fJ, fK)
    scale = max(1.0, float(fJ.norm()), float(fK.norm()))
    assert dist(a, repformula_matrix(I, J, K, fJ, fK)) <= 1e-11 * scale
    assert dist(a, repformula_split(I, J, K, fJ, fK)) <= 1e-11 * scale


@given(units(), separated_pair())
def test_partition_of_unity(I, pair):
    p, q = partition_coefficients(I, *pair)
    assert dist(p + q, ONE) <= 1e-12


@given(separated_pair(), quats, quats)
def test_stem_reconstruction(pair, fJ, fK):
    J, K = pair
    f1, f2 = stem_from_pair(J, K, fJ, fK)
    F = StemFunction(lambda x, y: (f1, f2))
    scale = max(1.0, float(fJ.norm()), float(fK.norm()))
    assert dist(eval_from_stem(F, SlicePoint(J, 0.0, 1.0)), fJ) <= 1e-11 * scale
    assert dist(eval_from_stem(F, SlicePoint(K, 0.0, 1.0)), fK) <= 1e-11 * scale


@settings(max_examples=50)
@given(st.lists(st.builds(Quaternion, small, small, small, small), min_size=1, max_size=9), units(), separated_pair(), small, st.floats(0.0, 1.0))
def test_polynomials_satisfy_repformula(coeffs, I, pair, x, y):
    J, K = pair
    f = right_polynomial(coeffs)
    got = repformula_point(I, J, K, f(embed(J, x, y)), f(embed(K, x, y)))
    assert dist(got, f(embed(I, x, y))) <= 1e-10


# geometry


@given(units(), units(), coord, coord, coord, coord)
def test_sigma_distance_symmetric_and_dominant(I, J, a, b, c, d):
    p, q = embed(I, a, b), embed(J, c, d)
    assert math.isclose(sigma_distance(p, q), sigma_distance(q, p), rel_tol=1e-12, abs_tol=1e-12)
    assert sigma_distance(p, q) >= float((p - q).norm()) - 1e-12


@given(units(), units(), coord, coord, coord, coord, coord, coord)
def test_sigma_triangle_inequality(I, J, a, b, c, d, e, f):
    p, q, r = embed(I, a, b), embed(J, c, d), embed(I, e, f)
    assert sigma_distance(p, r) <= sigma_distance(p, q) + sigma_distance(q, r) + 1e-9


@given(coord, st.floats(0.1, 3.0), quats)
def test_sigma_ball_with_real_center_is_euclidean(c, r, q):
    assume(abs(float((q - c).norm()) - r) > 1e-9)
    assert sigma_ball(c, r).contains(q) == euclidean_ball(c, r).contains(q)


@given(st.floats(-3.0, 9.0), units(), units())
def test_real_membership_is_unit_independent(x, I, J):
    for S in (ellipse_book(I_UNIT), dumbbell(I_UNIT), sigma_ball(I_UNIT, 2.0), ray_complement(PhiDistance(J_UNIT), J_UNIT)):
        assert S.contains_coords(I, x, 0.0) == S.contains_coords(J, x, 0.0)


@given(units(), coord, st.floats(0.01, 3.0))
def test_ray_complement_canonicalization(u, x, y):
    S = ray_complement(PhiDistance(J_UNIT), J_UNIT)
    assert S.contains_coords(u, x, -y) == S.contains_coords(-u, x, y)


@given(units(), units())
def test_dist_to_slice_formula(J, I):
    assert math.isclose(dist_to_slice(J, I), math.sqrt(max(0.0, 1.0 - float(J.dot(I)) ** 2)), abs_tol=1e-12)


# extension and branch


@settings(max_examples=40)
@given(st.integers(0, 8), units(), small, st.floats(0.0, 1.0))
def test_monomial_extension(n, J, x, y):
    q = embed(J, x, y)
    assume(sigma_distance(0.0, q) < 0.95)
    E = extend_from_disk(HolomorphicSliceData.series(I_UNIT, 0j, 1.0, [0.0] * n + [1.0]))
    expected = ONE
    for _ in range(n):
        expected = expected * q
    assert dist(E(q), expected) <= 1e-10


@given(st.sampled_from([0.0, 0.25, 0.5, 0.75, 1.0]), units(), coord, coord)
def test_branch_certificate(s, J, x, y):
    B = BranchFunction(J, s)
    z = complex(x, y)
    assume(not B.on_cut(z))
    assert branch_residual(B, z) <= 1e-12 * max(1.0, abs(2 * z - 1j))


@given(units())
def test_counterexample_residual_matches_closed_form(I):
    phi = PhiDistance(J_UNIT)
    assume(0.5 + 1e-9 < phi(I) < 1.0 - 1e-9)
    (rec,) = counterexample_report(J_UNIT, [I])
    assert rec.agreement <= 1e-12
    assert math.isclose(rec.residual_norm, float((1 - I * J_UNIT).norm()), abs_tol=1e-12)
    assert rec.residual_norm > 0


@settings(max_examples=25, deadline=None)
@given(units(), units(), units(), st.floats(0.05, 0.3))
def test_psi_phi_is_path_slice(a, b, c, h):
    assume(dist(a, J_UNIT) > 0.1)
    f = psi_phi_model(PhiDistance(J_UNIT), J_UNIT)
    g = ComplexPath(((0.0, 0.0), (1.0, 0.0), (1.0, h)))
    rep = path_slice_consistency(f, g, [a, J_UNIT, b, c], n_path=64)
    assert rep.max_defect <= 1e-9


@settings(max_examples=25, deadline=None)
@given(st.lists(st.builds(Quaternion, small, small, small, small), min_size=1, max_size=6), units(), units(), units())
def test_polynomials_are_path_slice(coeffs, a, b, c):
    assume(min(dist(a, b), dist(b, c), dist(a, c)) > 0.1)
    f = polynomial_model(coeffs, euclidean_ball(0.0, 2.0))
    g = ComplexPath(((0.0, 0.0), (0.4, 0.3), (-0.2, 0.9)))
    assert path_slice_consistency(f, g, [a, b, c], n_path=64).max_defect <= 1e-9
