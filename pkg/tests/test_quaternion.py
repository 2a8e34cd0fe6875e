import math
import pickle
from fractions import Fraction

import numpy as np
import pytest

from slicelab.errors import DegeneratePair, NotAUnit, NotOrthogonal, ZeroQuaternion
from slicelab.quaternion import (
    I_UNIT,
    J_UNIT,
    K_UNIT,
    ONE,
    ImaginaryUnit,
    InterpMatrix,
    Quaternion,
    SlicePoint,
    embed,
    interp_matrix_inv,
    qinv,
    qmul,
    random_unit,
    rational_unit,
    split_basis,
    unit_of,
)

i, j, k = I_UNIT, J_UNIT, K_UNIT


def close(a, b, tol=1e-12):
    return float((Quaternion.coerce(a) - Quaternion.coerce(b)).norm()) <= tol


def test_hamilton_table():
    assert qmul(i, j) == k
    assert qmul(j, i) == -k
    assert qmul(j, k) == i
    assert qmul(k, i) == j
    for u in (i, j, k):
        assert u * u == -ONE


def test_products_by_hand():
    q = Quaternion(2, -3, 0, 1)
    assert qmul(q, ONE) == q
    assert qmul(Quaternion(2, 3, 0, 0), Quaternion(1, 0, 1, 0)) == Quaternion(2, 3, 2, 3)


def test_inverse():
    assert qinv(ONE) == ONE
    assert close(qinv(i), -i)
    assert close(qinv(Quaternion(1, 1, 1, 1)), Quaternion(0.25, -0.25, -0.25, -0.25))
    with pytest.raises(ZeroQuaternion):
        qinv(Quaternion(0, 0, 0, 0))
    with pytest.raises(ZeroQuaternion):
        qinv(Quaternion(1e-15, 0, 0, 0))


def test_conjugate_norm_identity():
    q = Quaternion(1.5, -2, 0.25, 3)
    assert close(q.conj() * q, q.norm2() * ONE, 1e-12)
    assert q.norm2() == pytest.approx(1.5**2 + 4 + 0.0625 + 9)


def test_unit_of():
    assert unit_of(Quaternion(3, 4, 0, 0)) == i
    assert unit_of(Quaternion(5, 0, 0, 0)) is None
    u = unit_of(Quaternion(1, 1, 1, 0))
    assert close(u, Quaternion(0, 1 / math.sqrt(2), 1 / math.sqrt(2), 0))


def test_embed():
    assert embed(j, 1, 2) == Quaternion(1, 0, 2, 0)
    assert embed(i, 3, 0) == Quaternion(3, 0, 0, 0)
    u = ImaginaryUnit.normalized(1, 1, 0)
    assert close(embed(u, 0, math.sqrt(2)), Quaternion(0, 1, 1, 0))


def test_unit_validation():
    with pytest.raises(NotAUnit):
        ImaginaryUnit(1.0, 1.0, 0.0)
    assert ImaginaryUnit(Fraction(3, 5), Fraction(4, 5), 0) * ImaginaryUnit(Fraction(3, 5), Fraction(4, 5), 0) == -ONE


def test_unit_pickles():
    u = ImaginaryUnit.normalized(1, 2, 3)
    assert pickle.loads(pickle.dumps(u)) == u


def test_slice_point_canonical_form():
    P = SlicePoint.of(i, 1.0, -2.0)
    assert P.unit == -i and P.y == 2.0 and not P.is_real
    R = SlicePoint.of(j, 3.0, 0.0)
    assert R.is_real and R.unit == i
    assert P.to_quaternion() == Quaternion(1.0, -2.0, 0.0, 0.0)


def test_split_basis_examples():
    a1, a2 = split_basis(Quaternion(1, 2, 3, 4), i, j)
    assert close(a1, Quaternion(1, 2, 0, 0)) and close(a2, Quaternion(3, 4, 0, 0))
    a1, a2 = split_basis(Quaternion(7, 0, 0, 0), i, j)
    assert close(a1, 7 * ONE) and close(a2, Quaternion(0, 0, 0, 0))
    a1, a2 = split_basis(j, i, j)
    assert close(a1, Quaternion(0, 0, 0, 0)) and close(a2, ONE)
    with pytest.raises(NotOrthogonal):
        split_basis(ONE, i, ImaginaryUnit.normalized(1, 1, 0))


def test_interp_inverse_examples():
    M = interp_matrix_inv(i, -i)
    expected = (0.5 * ONE, 0.5 * ONE, -0.5 * i, 0.5 * i)
    assert all(close(a, b) for a, b in zip(M.entries(), expected))
    M = interp_matrix_inv(i, j)
    expected = (
        Quaternion(0.5, 0, 0, -0.5),
        Quaternion(0.5, 0, 0, 0.5),
        Quaternion(0, -0.5, 0.5, 0),
        Quaternion(0, 0.5, -0.5, 0),
    )
    assert all(close(a, b) for a, b in zip(M.entries(), expected))
    with pytest.raises(DegeneratePair):
        interp_matrix_inv(i, i)


def test_interp_inverse_float_identity():
    rng = np.random.default_rng(3)
    for _ in range(200):
        J, K = random_unit(rng), random_unit(rng)
        if float((J - K).norm()) < 0.1:
            continue
        M = interp_matrix_inv(J, K) @ InterpMatrix.interpolation(J, K)
        assert M.max_deviation(InterpMatrix.identity()) <= 1e-12


def test_rational_mode_is_exact():
    J, K = rational_unit(1, 2, 3), rational_unit(-2, 1, 1)
    assert J.is_exact() and (J * J) == -ONE
    M = interp_matrix_inv(J, K) @ InterpMatrix.interpolation(J, K)
    assert M == InterpMatrix.identity()
    assert all(isinstance(c, Fraction) for e in M.entries() for c in e)
    assert qinv(J - K) * J == -(K * qinv(J - K))
