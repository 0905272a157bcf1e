"""Spectral data of the positive parts of a factored isometry.

``Epos`` splits ``C^n`` into eigenspaces ``K_i`` (eigenvalue ``a_i > 1``) and
the complement ``K'perp`` where it is the identity. ``Cpos`` maps an
orthonormal basis ``e`` of ``K_i`` onto mutually orthogonal vectors
``xi = Cpos e`` of common norm ``delta_i``, with ``a_i^2 = 1 + delta_i^2``.
"""

from dataclasses import dataclass, replace

import numpy as np

from .group import FactoredIsometry
from .linalg import (
    DEFAULT_TOL,
    ToleranceConfig,
    adjoint,
    cluster_eigenvalues,
    hermitian_eig,
    operator_norm,
    orthonormal_complement,
)

__all__ = [
    "SpectralBlock",
    "SpectralDecomposition",
    "decompose",
    "verify_decomposition",
    "rank_of_C",
    "projector",
]


@dataclass(frozen=True)
class SpectralBlock:
    a: float
    delta: float
    k_i: int
    basis_K: np.ndarray  # n x k_i, orthonormal
    basis_M: np.ndarray  # m x k_i, orthogonal columns of norm delta

    def coordinates_on_M(self, X):
        """Coordinate matrix of ``X`` restricted to ``span(basis_M)`` in the basis ``basis_M``."""
        return adjoint(self.basis_M) @ X @ self.basis_M / self.delta**2

    def coordinates_on_K(self, X):
        return adjoint(self.basis_K) @ X @ self.basis_K


@dataclass(frozen=True)
class SpectralDecomposition:
    blocks: tuple
    basis_Kperp: np.ndarray  # n x (n - k)
    m: int
    n: int

    @property
    def k(self) -> int:
        return sum(b.k_i for b in self.blocks)

    @property
    def basis_ranCperp_dim(self) -> int:
        return self.m - self.k

    def basis_K_all(self):
        cols = [b.basis_K for b in self.blocks]
        return np.hstack(cols) if cols else np.zeros((self.n, 0), dtype=complex)

    def basis_M_all(self):
        cols = [b.basis_M for b in self.blocks]
        return np.hstack(cols) if cols else np.zeros((self.m, 0), dtype=complex)

    def basis_ranCperp(self):
        """Orthonormal basis of the complement of ``ran C`` in ``C^m``."""
        M = self.basis_M_all()
        if M.shape[1] == 0:
            return np.eye(self.m, dtype=complex)
        deltas = np.concatenate([np.full(b.k_i, b.delta) for b in self.blocks])
        return orthonormal_complement(M / deltas, self.m)


def projector(Q):
    """Orthogonal projector onto the column span of ``Q`` (columns need not be orthonormal)."""
    if Q.shape[1] == 0:
        return np.zeros((Q.shape[0], Q.shape[0]), dtype=complex)
    return Q @ np.linalg.solve(adjoint(Q) @ Q, adjoint(Q))


def decompose(F: FactoredIsometry, tol: ToleranceConfig = DEFAULT_TOL) -> SpectralDecomposition:
    w, W = hermitian_eig(F.Epos, tol)
    blocks = []
    perp_cols = []
    for group in cluster_eigenvalues(w, tol.cluster_rel_tol):
        a = float(np.mean(w[group]))
        cols = W[:, group]
        if a > 1.0 + tol.unit_tol:
            delta = float(np.sqrt(a * a - 1.0))
            blocks.append(SpectralBlock(a, delta, len(group), cols, F.Cpos @ cols))
        else:
            perp_cols.append(cols)
    blocks.sort(key=lambda b: -b.a)
    Kperp = np.hstack(perp_cols) if perp_cols else np.zeros((F.n, 0), dtype=complex)
    return SpectralDecomposition(tuple(blocks), Kperp, F.m, F.n)


def rank_of_C(F: FactoredIsometry, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    return decompose(F, tol).k


def verify_decomposition(F: FactoredIsometry, S: SpectralDecomposition) -> dict:
    """Residuals of every identity the decomposition is supposed to satisfy.

    Keys are stable labels; each value is the worst operator-norm residual over
    all blocks (0.0 when there is nothing to check).
    """
    B, C, E = F.Bpos, F.Cpos, F.Epos
    res = {
        "E e = a e": 0.0,
        "C e = xi": 0.0,
        "C* xi = delta^2 e": 0.0,
        "B xi = a xi": 0.0,
        "a^2 = 1 + delta^2": 0.0,
        "|xi| = delta": 0.0,
        "xi orthogonality": 0.0,
        "K orthonormality": 0.0,
        "E = I on K'perp": 0.0,
        "C = 0 on K'perp": 0.0,
        "B = I on (ran C)perp": 0.0,
        "C reconstruction": 0.0,
    }

    def bump(key, val):
        res[key] = max(res[key], float(val))

    for b in S.blocks:
        e, xi = b.basis_K, b.basis_M
        bump("E e = a e", operator_norm(E @ e - b.a * e))
        bump("C e = xi", operator_norm(C @ e - xi))
        bump("C* xi = delta^2 e", operator_norm(adjoint(C) @ xi - b.delta**2 * e))
        bump("B xi = a xi", operator_norm(B @ xi - b.a * xi))
        bump("a^2 = 1 + delta^2", abs(b.a**2 - 1.0 - b.delta**2))
        bump("|xi| = delta", np.max(np.abs(np.linalg.norm(xi, axis=0) - b.delta)))
    Mall, Kall = S.basis_M_all(), S.basis_K_all()
    if Mall.shape[1]:
        deltas = np.concatenate([np.full(b.k_i, b.delta) for b in S.blocks])
        G = adjoint(Mall) @ Mall
        bump("xi orthogonality", operator_norm(G - np.diag(deltas**2)))
    Kfull = np.hstack([Kall, S.basis_Kperp])
    bump("K orthonormality", operator_norm(adjoint(Kfull) @ Kfull - np.eye(S.n)))
    P = S.basis_Kperp
    if P.shape[1]:
        bump("E = I on K'perp", operator_norm(E @ P - P))
        bump("C = 0 on K'perp", operator_norm(C @ P))
    Q = S.basis_ranCperp()
    if Q.shape[1]:
        bump("B = I on (ran C)perp", operator_norm(B @ Q - Q))
    bump("C reconstruction", operator_norm(C - Mall @ adjoint(Kall)))
    return res


def with_delta(S: SpectralDecomposition, index: int, delta: float) -> SpectralDecomposition:
    """Copy of ``S`` with one block's ``delta`` overwritten (fault injection in tests)."""
    blocks = list(S.blocks)
    blocks[index] = replace(blocks[index], delta=delta)
    return replace(S, blocks=tuple(blocks))
