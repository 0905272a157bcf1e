"""Dense complex linear algebra kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Everything here is
a pure function; the only randomness comes from caller-supplied seeds.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import schur
from scipy.optimize import linear_sum_assignment

from .errors import NotHermitian, NotPositive, Singular

__all__ = [
    "ToleranceConfig",
    "DEFAULT_TOL",
    "as_matrix",
    "adjoint",
    "operator_norm",
    "hermitian_eig",
    "positive_sqrt",
    "positive_inv_sqrt",
    "cluster_eigenvalues",
    "random_unitary",
    "random_contraction",
    "orthonormal_complement",
    "is_unitary",
    "normal_eig",
    "multiset_distance",
]


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds shared by every module.

    eq_tol
        Operator-norm threshold for "equal" / "zero".
    cluster_rel_tol
        Relative gap below which two eigenvalues are treated as one.
    unit_tol
        An eigenvalue ``a`` of the positive part counts as ``> 1`` only when
        ``a > 1 + unit_tol``.
    """

    eq_tol: float = 1e-9
    cluster_rel_tol: float = 1e-8
    unit_tol: float = 1e-8

    def __post_init__(self):
        for name in ("eq_tol", "cluster_rel_tol", "unit_tol"):
            if not getattr(self, name) >= 0:
                raise ValueError(f"{name} must be nonnegative, got {getattr(self, name)!r}")


DEFAULT_TOL = ToleranceConfig()


def as_matrix(M, name="matrix"):
    """Coerce to a finite 2-D complex array (1-D input becomes a column)."""
    arr = np.asarray(M, dtype=complex)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"{name} must be a nonempty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def adjoint(M):
    return np.conj(np.asarray(M, dtype=complex)).T


def operator_norm(M) -> float:
    """Largest singular value."""
    M = np.asarray(M, dtype=complex)
    if M.size == 0:
        return 0.0
    if M.ndim == 1:
        return float(np.linalg.norm(M))
    return float(np.linalg.norm(M, 2))


def hermitian_eig(Hm, tol: ToleranceConfig = DEFAULT_TOL):
    """Eigenvalues (ascending) and a unitary eigenvector matrix of a Hermitian matrix."""
    Hm = np.asarray(Hm, dtype=complex)
    if Hm.ndim != 2 or Hm.shape[0] != Hm.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {Hm.shape}")
    skew = operator_norm(Hm - adjoint(Hm))
    if skew > tol.eq_tol:
        raise NotHermitian(f"||H - H*|| = {skew:.3e} exceeds {tol.eq_tol:.1e}")
    w, W = np.linalg.eigh(0.5 * (Hm + adjoint(Hm)))
    return w, W


def _checked_psd_eig(P, tol):
    w, W = hermitian_eig(P, tol)
    if w.size and w[0] < -tol.eq_tol:
        raise NotPositive(f"smallest eigenvalue {w[0]:.3e} is negative")
    return np.clip(w, 0.0, None), W


def positive_sqrt(P, tol: ToleranceConfig = DEFAULT_TOL):
    """The positive semidefinite square root of a PSD matrix."""
    w, W = _checked_psd_eig(P, tol)
    return (W * np.sqrt(w)) @ adjoint(W)


def positive_inv_sqrt(P, tol: ToleranceConfig = DEFAULT_TOL):
    """``P^{-1/2}`` for positive definite ``P``."""
    w, W = _checked_psd_eig(P, tol)
    if w.size and w[0] <= tol.eq_tol:
        raise Singular(f"smallest eigenvalue {w[0]:.3e} is not positive enough to invert")
    return (W / np.sqrt(w)) @ adjoint(W)


def cluster_eigenvalues(values, cluster_rel_tol: float = DEFAULT_TOL.cluster_rel_tol):
    """Greedy grouping of ascending real values.

    A value joins the current group when it lies within
    ``cluster_rel_tol * max(1, |leader|)`` of the group's first element;
    otherwise it starts a new group.  Returns a list of index lists.
    """
    groups = []
    leader = None
    for idx, v in enumerate(values):
        if leader is not None and abs(v - leader) <= cluster_rel_tol * max(1.0, abs(leader)):
            groups[-1].append(idx)
        else:
            groups.append([idx])
            leader = v
    return groups


def _rng(seed):
    return np.random.default_rng(seed)


def _complex_gaussian(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_unitary(seed, n: int):
    """Haar-like random unitary: QR of a complex Gaussian with ``diag(R) >= 0``.

    ``seed`` may be an int or a ``numpy.random.Generator``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = _rng(seed)
    Q, R = np.linalg.qr(_complex_gaussian(rng, (n, n)))
    d = np.diag(R)
    phase = np.where(np.abs(d) > 0, d / np.where(np.abs(d) > 0, np.abs(d), 1.0), 1.0)
    return Q * phase


def random_contraction(seed, m: int, n: int, target_norm: float):
    """Complex Gaussian ``m x n`` matrix rescaled to operator norm ``target_norm``."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    if not 0.0 < target_norm < 1.0:
        raise ValueError("target_norm must lie in (0, 1)")
    rng = _rng(seed)
    G = _complex_gaussian(rng, (m, n))
    return G * (target_norm / operator_norm(G))


def orthonormal_complement(Q, dim: int, rank_tol: float = 1e-10):
    """Orthonormal basis (columns) of the complement of ``span(Q)`` in ``C^dim``."""
    if Q is None or Q.shape[1] == 0:
        return np.eye(dim, dtype=complex)
    U, s, _ = np.linalg.svd(Q, full_matrices=True)
    r = int(np.sum(s > rank_tol * max(1.0, s[0])))
    return U[:, r:]


def is_unitary(W, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    W = np.asarray(W, dtype=complex)
    if W.ndim != 2 or W.shape[0] != W.shape[1]:
        return False
    return operator_norm(adjoint(W) @ W - np.eye(W.shape[0])) <= tol.eq_tol


def normal_eig(X):
    """Eigen-decomposition of a normal matrix with a unitary eigenvector matrix.

    Uses the complex Schur form ``X = Z S Z*``; for normal ``X`` the triangular
    factor is diagonal.  Returns ``(values, Z, offdiag)`` where ``offdiag`` is
    the norm of the strictly upper part of ``S`` (zero for exactly normal input).
    """
    X = np.asarray(X, dtype=complex)
    if X.shape[0] == 0:
        return np.zeros(0, dtype=complex), np.zeros((0, 0), dtype=complex), 0.0
    S, Z = schur(X, output="complex")
    off = operator_norm(np.triu(S, 1))
    return np.diag(S).copy(), Z, off


def multiset_distance(x, y) -> float:
    """Largest gap in the min-cost one-to-one matching of two multisets.

    This bounds the bottleneck (matching) distance from above, so it is a
    conservative comparison of two spectra.
    """
    x = np.asarray(x, dtype=complex).ravel()
    y = np.asarray(y, dtype=complex).ravel()
    if x.size != y.size:
        return float("inf")
    if x.size == 0:
        return 0.0
    cost = np.abs(x[:, None] - y[None, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max())
