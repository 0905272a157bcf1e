import numpy as np
import pytest

from cartanball.errors import KTooLarge, NotABasis, PreconditionFailed
from cartanball.fixed_points import (
    Conclusion,
    common_eigen_fixed_points,
    detect_generic,
    enumerate_generic,
    fixed_from_eigenvectors,
    offdiagonal_rank,
    verify_fixed,
)
from cartanball.classify import is_normal
from cartanball.generate import normal_isometry, perturb, unitary_isometry
from cartanball.group import from_factors, identity
from cartanball.linalg import operator_norm, random_contraction, random_unitary

from conftest import EXAMPLE_A


def test_identity_fixes_everything():
    F = random_contraction(0, 2, 1, 0.9)
    assert verify_fixed(identity(2, 1), F) == 0.0


def test_worked_example_fixed_points(example):
    assert verify_fixed(example, [[1.0], [0.0]]) == 0.0
    assert verify_fixed(example, [[-1.0], [0.0]]) == 0.0
    assert verify_fixed(example, [[0.0], [1.0]]) > 0.1


def test_fixed_from_eigenvectors_examples(example):
    assert fixed_from_eigenvectors(example, [[1.0]], [[1.0], [0.0]])
    assert fixed_from_eigenvectors(example, [[1.0]], [[-1.0], [0.0]])
    assert not fixed_from_eigenvectors(example, [[1.0]], [[0.0], [1.0]])
    U, V = random_unitary(1, 3), np.diag([1j, -1.0])
    T = from_factors(np.zeros((3, 2)), U, V)
    assert fixed_from_eigenvectors(T, np.eye(2), np.zeros((3, 2)))


def test_fixed_from_eigenvectors_needs_a_basis(example):
    T = normal_isometry(0, 3, 2)
    with pytest.raises(NotABasis):
        fixed_from_eigenvectors(T, np.ones((2, 2)), np.zeros((3, 2)))
    with pytest.raises(NotABasis):
        fixed_from_eigenvectors(T, np.ones((2, 1)), np.zeros((3, 2)))


def test_enumerate_worked_example(example):
    pts = enumerate_generic(example)
    assert [p.theta for p in pts] == [(1,), (-1,)]
    assert np.array_equal(pts[0].F, np.array([[1.0], [0.0]]))
    assert np.array_equal(pts[1].F, np.array([[-1.0], [0.0]]))
    assert [p.norm for p in pts] == [1.0, 1.0]
    assert np.allclose([p.eigenvalues[0] for p in pts], [2.0, 0.5])


def test_enumerate_k2_sign_patterns():
    T = normal_isometry(12, 3, 2, k=2)
    pts = enumerate_generic(T)
    assert [p.theta for p in pts] == [(1, 1), (1, -1), (-1, 1), (-1, -1)]
    for p in pts:
        assert abs(p.norm - 1) < 1e-8 and p.residual < 1e-8
        assert fixed_from_eigenvectors(T, p.z_basis, p.F)


def test_enumerate_distinct_points_and_complement_kernel():
    T = normal_isometry(4, 6, 5, k=3)
    pts = enumerate_generic(T)
    assert len(pts) == 8
    Fs = [p.F for p in pts]
    for i in range(8):
        for j in range(i):
            assert operator_norm(Fs[i] - Fs[j]) > 0.5
    Zc = pts[0].z_basis[:, 3:]
    assert all(operator_norm(F @ Zc) < 1e-12 for F in Fs)


def test_enumerate_guards(example_flipped):
    with pytest.raises(PreconditionFailed):
        enumerate_generic(example_flipped)
    with pytest.raises(KTooLarge):
        enumerate_generic(normal_isometry(0, 4, 3, k=3), max_k=2)


def test_detect_examples(example, example_flipped):
    r = detect_generic(example)
    assert (r.count, r.q, r.k, r.conclusion) == (2, 1, 1, Conclusion.NON_UNITARY_NORMAL)
    r = detect_generic(example_flipped)
    assert r.q != r.k and r.conclusion is Conclusion.NOT_NORMAL
    r = detect_generic(unitary_isometry(3, 3, 2))
    assert (r.k, r.count, r.conclusion) == (0, 1, Conclusion.UNITARY)


def test_detect_agrees_with_normality():
    for s in range(40):
        T = normal_isometry(s, 4, 2)
        if s % 2:
            T = perturb(T, seed=s)
        nun = is_normal(T)[0]
        assert (detect_generic(T).conclusion is Conclusion.NON_UNITARY_NORMAL) == nun == (s % 2 == 0)


def test_offdiagonal_rank(example):
    assert offdiagonal_rank(example) == 1
    assert offdiagonal_rank(identity(3, 2)) == 0
    assert offdiagonal_rank(normal_isometry(1, 5, 3, k=2)) == 2


def test_common_points_worked_example_is_empty(example):
    assert common_eigen_fixed_points(example) == []


def _complement_instance(v_perp):
    A = np.array([[0.6, 0], [0, 0], [0, 0]])
    U = np.diag([1.0, 1.0, -1.0])
    V = np.diag([1.0, v_perp])
    return from_factors(A, U, V)


def test_common_points_shared_eigenvalue():
    T = _complement_instance(1.0)
    (p,) = common_eigen_fixed_points(T)
    assert p.mu == pytest.approx(1.0) and p.pairs == 1
    assert p.residual < 1e-8
    assert verify_fixed(T, p.F) < 1e-8
    assert abs(p.norm - 1) < 1e-12


def test_common_points_disjoint_spectra():
    assert common_eigen_fixed_points(_complement_instance(1j)) == []
