import numpy as np
import pytest

from cartanball.group import FactoredIsometry
from cartanball.linalg import operator_norm, random_unitary
from cartanball.spectral import decompose, projector, rank_of_C, verify_decomposition, with_delta

from conftest import EXAMPLE_A


def _factored(A, seed=0):
    m, n = A.shape
    return FactoredIsometry(A, random_unitary(seed, m), random_unitary(seed + 1, n))


def test_unitary_case_has_no_blocks():
    F = _factored(np.zeros((3, 2)))
    S = decompose(F)
    assert S.blocks == () and S.k == 0
    assert S.basis_Kperp.shape == (2, 2)
    assert operator_norm(S.basis_Kperp.conj().T @ S.basis_Kperp - np.eye(2)) < 1e-12
    assert max(verify_decomposition(F, S).values()) < 1e-12


def test_worked_example_block():
    F = FactoredIsometry(EXAMPLE_A, np.eye(2), np.eye(1))
    S = decompose(F)
    assert S.k == 1 and len(S.blocks) == 1
    b = S.blocks[0]
    assert b.a == pytest.approx(1.25, abs=1e-14)
    assert b.delta == pytest.approx(0.75, abs=1e-14)
    assert b.k_i == 1
    # eigenvectors are fixed up to a phase; basis_M follows basis_K
    phase = b.basis_K[0, 0]
    assert abs(abs(phase) - 1) < 1e-14
    assert np.allclose(b.basis_M / phase, [[0.75], [0.0]], atol=1e-14)
    assert S.basis_Kperp.shape == (1, 0)
    assert max(verify_decomposition(F, S).values()) < 1e-9


def test_equal_singular_values_form_one_block():
    A = np.array([[0.6, 0], [0, 0.6], [0, 0]])
    S = decompose(_factored(A, 3))
    assert len(S.blocks) == 1 and S.blocks[0].k_i == 2 and S.k == 2


def test_blocks_sorted_by_decreasing_a():
    X, Y = random_unitary(4, 4), random_unitary(5, 3)
    A = X[:, :3] @ np.diag([0.3, 0.8, 0.5]) @ Y.conj().T
    S = decompose(_factored(A, 6))
    a = [b.a for b in S.blocks]
    assert a == sorted(a, reverse=True) and len(a) == 3
    assert np.allclose([b.delta for b in S.blocks], np.array([0.8, 0.5, 0.3]) / np.sqrt(1 - np.array([0.8, 0.5, 0.3]) ** 2))


def test_rank_of_C_examples():
    assert rank_of_C(_factored(np.zeros((2, 1)))) == 0
    assert rank_of_C(FactoredIsometry(EXAMPLE_A, np.eye(2), np.eye(1))) == 1
    X, Y = random_unitary(7, 3), random_unitary(8, 2)
    A = X[:, :2] @ np.diag([0.5, 0.3]) @ Y.conj().T
    assert rank_of_C(_factored(A, 9)) == 2


def test_injected_delta_fault_is_flagged():
    F = FactoredIsometry(EXAMPLE_A, np.eye(2), np.eye(1))
    S = with_delta(decompose(F), 0, 0.7)
    res = verify_decomposition(F, S)
    assert res["a^2 = 1 + delta^2"] > 1e-3


def test_projector_handles_non_orthonormal_columns():
    Q = np.array([[2.0, 1.0], [0.0, 1.0], [0.0, 0.0]])
    P = projector(Q)
    assert operator_norm(P @ P - P) < 1e-14
    assert np.allclose(P, np.diag([1, 1, 0]))
