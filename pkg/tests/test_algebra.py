import math

import numpy as np
import pytest
from hypothesis import given

from su11.algebra import (
    H, I2, J, X, Y, commutator, dagger, det, eig2, mat2, matmul, pairing, trace,
)
from su11.maps import exp_q
from su11.spaces import QStarPoint, to_matrix

from conftest import group_elements, matrices, random_matrix


def test_identity_product():
    assert np.array_equal(matmul(I2, I2), I2)


def test_inverse_diagonal_pair():
    assert np.allclose(matmul(np.diag([2, 0.5]), np.diag([0.5, 2])), I2, atol=0)


def test_hand_product():
    A = mat2(0, 1, 1, 0)
    B = mat2(0, 1j, 0, 0)
    assert np.array_equal(matmul(A, B), mat2(0, 0, 0, 1j))


def test_mat2_rejects_nonfinite():
    with pytest.raises(ValueError):
        mat2(1, math.nan, 0, 1)
    with pytest.raises(ValueError):
        mat2(1, 0, complex(0, math.inf), 1)


def test_constants_read_only():
    with pytest.raises(ValueError):
        X[0, 0] = 1


@given(matrices(), matrices())
def test_det_multiplicative(A, B):
    lhs = det(matmul(A, B))
    rhs = det(A) * det(B)
    scale = max(1.0, np.max(np.abs(A)) ** 2 * np.max(np.abs(B)) ** 2)
    assert abs(lhs - rhs) <= 1e-14 * 8 * scale


def test_dagger_fixes_q():
    M = to_matrix(QStarPoint(0.3, -1.2, 2.0))
    assert np.array_equal(dagger(M), M)


@pytest.mark.parametrize("M", [X, Y, H, 0.3 * X - 1.7 * Y + 2 * H])
def test_dagger_negates_su11(M):
    assert np.array_equal(dagger(M), -M)


def test_dagger_hand_value():
    assert np.array_equal(dagger(mat2(0, 1, 0, 0)), mat2(0, 0, -1, 0))


def test_dagger_matches_definition(rng):
    M = random_matrix(rng)
    assert np.allclose(dagger(M), J @ M.conj().T @ J, atol=0)


def test_dagger_involution_bitwise(rng):
    Ms = rng.standard_normal((10_000, 2, 2)) + 1j * rng.standard_normal((10_000, 2, 2))
    assert all(np.array_equal(dagger(dagger(M)), M) for M in Ms)


@given(matrices(), matrices())
def test_dagger_antihomomorphism(A, B):
    err = np.max(np.abs(dagger(A @ B) - dagger(B) @ dagger(A)))
    assert err <= 1e-14 * max(1.0, np.max(np.abs(A)) * np.max(np.abs(B))) * 4


@given(group_elements())
def test_group_preserves_form(g):
    G = to_matrix(g)
    assert np.max(np.abs(dagger(G) @ G - I2)) < 1e-13 * abs(g.u) ** 2


def test_eig2_diagonal():
    assert eig2(np.diag([2.0, 0.5])) == (2, 0.5)


def test_eig2_ordering_ties_by_imag():
    mu1, mu2 = eig2(np.diag([1 - 1j, 1 + 1j]))
    assert mu1 == 1 + 1j and mu2 == 1 - 1j


@given(matrices())
def test_eig2_vieta(M):
    mu1, mu2 = eig2(M)
    scale = max(1.0, np.max(np.abs(M)))
    assert abs(mu1 + mu2 - trace(M)) <= 1e-13 * scale
    assert abs(mu1 * mu2 - det(M)) <= 1e-13 * scale ** 2


def test_eig2_exp_q_diagonal():
    mu1, mu2 = eig2(to_matrix(exp_q(QStarPoint(0, 0, 1))))
    assert abs(mu1 - math.e) < 1e-14 and abs(mu2 - 1 / math.e) < 1e-14


def test_eig2_q_reciprocal_pair(rng):
    for _ in range(200):
        lam = rng.uniform(0.05, 3)
        s = rng.uniform(0, 2)
        phi = rng.uniform(0, 2 * math.pi)
        p = QStarPoint(lam * math.sinh(s) * math.cos(phi), lam * math.sinh(s) * math.sin(phi),
                       lam * math.cosh(s))
        mu1, mu2 = eig2(to_matrix(exp_q(p)))
        assert abs(mu1.imag) < 1e-12 and abs(mu2.imag) < 1e-12
        assert mu1.real > 1 > mu2.real > 0
        assert abs(mu1.real * mu2.real - 1) < 1e-12 * mu1.real


def test_pairing_examples():
    assert pairing(H, np.diag([1, -1]), 1) == 2
    assert pairing(X, mat2(0, 1j, 0, 0), 1) == 1
    assert pairing(X, np.diag([1, -1]), 1) == 0
    assert pairing(H, np.diag([1, -1]), 2) == 4


def test_pairing_rejects_factor():
    with pytest.raises(ValueError):
        pairing(X, Y, 3)


def test_bracket_relations_exact():
    # with these matrices the first relation carries a minus sign
    assert np.array_equal(commutator(X, Y), -2 * H)
    assert np.array_equal(commutator(X, H), -2 * Y)
    assert np.array_equal(commutator(Y, H), 2 * X)
