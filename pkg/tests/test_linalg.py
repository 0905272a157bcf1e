import numpy as np
import pytest

from cartanball.errors import NotHermitian, NotPositive, Singular
from cartanball.linalg import (
    DEFAULT_TOL,
    ToleranceConfig,
    adjoint,
    as_matrix,
    cluster_eigenvalues,
    hermitian_eig,
    is_unitary,
    multiset_distance,
    normal_eig,
    operator_norm,
    orthonormal_complement,
    positive_inv_sqrt,
    positive_sqrt,
    random_contraction,
    random_unitary,
)


def test_tolerance_defaults_and_validation():
    assert DEFAULT_TOL == ToleranceConfig(1e-9, 1e-8, 1e-8)
    with pytest.raises(ValueError):
        ToleranceConfig(eq_tol=-1.0)


def test_as_matrix_rejects_nonfinite_and_promotes_vectors():
    assert as_matrix([1, 2]).shape == (2, 1)
    with pytest.raises(ValueError):
        as_matrix([[np.nan]])


def test_adjoint_examples():
    assert np.array_equal(adjoint(np.eye(3)), np.eye(3))
    assert np.array_equal(adjoint([[0, 1j], [0, 0]]), [[0, 0], [-1j, 0]])
    rng = np.random.default_rng(0)
    M = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
    assert np.array_equal(adjoint(adjoint(M)), M)


def test_operator_norm_examples():
    assert operator_norm(np.zeros((2, 3))) == 0.0
    assert operator_norm(np.diag([0.6, 0.2])) == pytest.approx(0.6, abs=1e-15)
    assert operator_norm(np.array([[0.6], [0.0]])) == pytest.approx(0.6, abs=1e-15)


def test_hermitian_eig_examples():
    w, W = hermitian_eig(np.diag([2.0, 1.0]))
    assert np.allclose(w, [1, 2], atol=1e-15)
    w, W = hermitian_eig(np.array([[1.25, 0.75], [0.75, 1.25]]))
    assert np.allclose(w, [0.5, 2.0], atol=1e-14)
    assert is_unitary(W)
    w, _ = hermitian_eig(np.eye(4))
    assert np.allclose(w, 1.0)


def test_hermitian_eig_rejects_skew_input():
    with pytest.raises(NotHermitian):
        hermitian_eig(np.array([[0, 1], [0, 0]]))


def test_positive_roots_examples():
    assert np.allclose(positive_sqrt(np.eye(3)), np.eye(3))
    assert np.allclose(positive_inv_sqrt(np.diag([0.64, 1.0])), np.diag([1.25, 1.0]), atol=1e-14)
    P = np.array([[2.0, 1.0], [1.0, 2.0]])
    R = positive_sqrt(P)
    assert operator_norm(R @ R - P) < 1e-14


def test_positive_roots_errors():
    with pytest.raises(NotPositive):
        positive_sqrt(np.diag([1.0, -0.5]))
    with pytest.raises(Singular):
        positive_inv_sqrt(np.diag([1.0, 0.0]))


def test_cluster_examples():
    assert cluster_eigenvalues([1.0, 1.0, 2.5], 1e-8) == [[0, 1], [2]]
    assert cluster_eigenvalues([1.0, 1.0 + 1e-12, 1.25], 1e-8) == [[0, 1], [2]]
    assert cluster_eigenvalues([], 1e-8) == []


def test_random_unitary_and_contraction():
    U = random_unitary(0, 4)
    assert operator_norm(adjoint(U) @ U - np.eye(4)) < 1e-9
    A = random_contraction(1, 3, 2, 0.6)
    assert A.shape == (3, 2)
    assert abs(operator_norm(A) - 0.6) < 1e-9
    assert np.array_equal(random_unitary(5, 3), random_unitary(5, 3))
    assert np.array_equal(random_contraction(5, 3, 2, 0.4), random_contraction(5, 3, 2, 0.4))
    with pytest.raises(ValueError):
        random_contraction(0, 2, 2, 1.0)


def test_orthonormal_complement():
    Q = np.array([[1.0], [1.0], [0.0]]) / np.sqrt(2)
    P = orthonormal_complement(Q, 3)
    assert P.shape == (3, 2)
    assert operator_norm(adjoint(Q) @ P) < 1e-14
    assert operator_norm(adjoint(P) @ P - np.eye(2)) < 1e-14


def test_normal_eig_unitary_eigenbasis_for_repeated_eigenvalues():
    U = random_unitary(3, 4)
    X = U @ np.diag([1j, 1j, -1, 2]) @ adjoint(U)
    vals, Z, off = normal_eig(X)
    assert off < 1e-12
    assert is_unitary(Z)
    assert operator_norm(X @ Z - Z * vals) < 1e-12


def test_multiset_distance():
    assert multiset_distance([1, 2, 2], [2, 1, 2]) == 0.0
    assert multiset_distance([1, 2], [1, 2.5]) == pytest.approx(0.5)
    assert multiset_distance([1], [1, 2]) == float("inf")
