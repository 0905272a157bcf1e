"""Fixed points of group elements obtained from eigenvectors.

``F`` (an ``m x n`` matrix with ``||F|| <= 1``) is fixed by ``T`` when there is
a basis ``z_1..z_n`` of ``C^n`` such that every ``(F z_r, z_r)`` is an
eigenvector of ``T``.  The *generic* ones send part of an orthonormal basis to
``+-y_m`` and the rest to zero.  A non-unitary normal ``T`` with
``k = dim ran C`` has exactly ``2^k`` of them, and no other element has that
many; :func:`detect_generic` checks this from the raw eigenvectors of ``T``.
"""

import itertools
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .classify import is_non_unitary_normal
from .errors import (
    DegenerateBlockGauge,
    IllConditionedEigenbasis,
    InternalInconsistency,
    KTooLarge,
    NotABasis,
    PreconditionFailed,
)
from .group import GIsometry, act, factorize
from .linalg import DEFAULT_TOL, ToleranceConfig, adjoint, normal_eig, operator_norm
from .spectral import decompose

__all__ = [
    "Conclusion",
    "GenericFixedPoint",
    "CommonFixedPoint",
    "DetectionReport",
    "verify_fixed",
    "eigen_residual",
    "fixed_from_eigenvectors",
    "enumerate_generic",
    "detect_generic",
    "common_eigen_fixed_points",
    "offdiagonal_rank",
    "DEFAULT_MAX_K",
]

DEFAULT_MAX_K = 20
_RANK_TOL = 1e-7


class Conclusion(str, Enum):
    NON_UNITARY_NORMAL = "NonUnitaryNormal"
    NOT_NORMAL = "NotNormal"
    UNITARY = "Unitary"


@dataclass(frozen=True)
class GenericFixedPoint:
    F: np.ndarray
    theta: tuple
    z_basis: np.ndarray  # n x n unitary; first k columns paired, the rest complement
    eigenvalues: np.ndarray  # lambda_j (a_j + theta_j delta_j), one per paired column
    norm: float
    residual: float


@dataclass(frozen=True)
class CommonFixedPoint:
    F: np.ndarray
    mu: complex
    pairs: int  # number of K'perp eigenvectors sent to (ran C)perp eigenvectors
    norm: float
    residual: float


@dataclass(frozen=True)
class DetectionReport:
    count: int
    k: int
    q: int
    conclusion: Conclusion
    completable: bool
    details: list = field(default_factory=list)


def verify_fixed(T: GIsometry, F, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """``||act(T, F) - F||``; the action is well defined on the closed ball."""
    F = np.asarray(F, dtype=complex).reshape(T.m, T.n)
    return operator_norm(act(T, F, tol) - F)


def eigen_residual(T: GIsometry, v):
    """Rayleigh quotient ``rho`` of ``v`` and the relative residual ``||Tv - rho v|| / ||v||``."""
    v = np.asarray(v, dtype=complex).ravel()
    Tv = T.matrix @ v
    nv = np.vdot(v, v).real
    rho = np.vdot(v, Tv) / nv
    return complex(rho), float(np.linalg.norm(Tv - rho * v) / np.sqrt(nv))


def fixed_from_eigenvectors(T: GIsometry, z_basis, F, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True when every ``(F z_r, z_r)`` is an eigenvector of ``T``.

    In that case ``F`` must be a fixed point; this is asserted.
    """
    Z = np.asarray(z_basis, dtype=complex)
    F = np.asarray(F, dtype=complex).reshape(T.m, T.n)
    if Z.ndim == 1:
        Z = Z.reshape(-1, 1)
    if Z.shape != (T.n, T.n):
        raise NotABasis(f"expected {T.n} columns of length {T.n}, got shape {Z.shape}")
    s = np.linalg.svd(Z, compute_uv=False)
    if s[-1] <= 1e-10 * s[0]:
        raise NotABasis("columns are linearly dependent")
    for r in range(T.n):
        _, res = eigen_residual(T, np.concatenate([F @ Z[:, r], Z[:, r]]))
        if res > 10 * tol.eq_tol:
            return False
    fixed_res = verify_fixed(T, F, tol)
    if fixed_res > 10 * tol.eq_tol:
        raise InternalInconsistency(f"eigenvector condition holds but F moves by {fixed_res:.3e}")
    return True


def offdiagonal_rank(T: GIsometry, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    """``dim ran C`` read off the singular values of ``T12`` (they are the ``delta_i``)."""
    s = np.linalg.svd(T.T12, compute_uv=False)
    cutoff = np.sqrt((1.0 + tol.unit_tol) ** 2 - 1.0)
    return int(np.sum(s > cutoff))


def _paired_basis(T, tol):
    """Orthonormal ``z`` columns per block, ``y = C z / delta``, eigenvalue data, and the
    complement eigenbasis of ``V`` on ``K'perp``."""
    F = factorize(T, tol)
    S = decompose(F, tol)
    Zs, Ys, lams, avals, dvals = [], [], [], [], []
    for i, b in enumerate(S.blocks):
        lam, c, off = normal_eig(b.coordinates_on_K(F.V))
        dev = operator_norm(adjoint(c) @ c - np.eye(b.k_i))
        if off > 100 * tol.eq_tol or dev > 100 * tol.eq_tol:
            raise DegenerateBlockGauge(f"block {i}: no orthonormal eigenbasis (off {off:.3e}, dev {dev:.3e})")
        Z = b.basis_K @ c
        Zs.append(Z)
        Ys.append(F.Cpos @ Z / b.delta)
        lams.append(lam)
        avals.append(np.full(b.k_i, b.a))
        dvals.append(np.full(b.k_i, b.delta))
    P = S.basis_Kperp
    _, c, _ = normal_eig(adjoint(P) @ F.V @ P)
    Zc = P @ c if P.shape[1] else np.zeros((T.n, 0), dtype=complex)
    return (
        F,
        S,
        _hcat(Zs, T.n),
        _hcat(Ys, T.m),
        np.concatenate(lams) if lams else np.zeros(0, dtype=complex),
        np.concatenate(avals) if avals else np.zeros(0),
        np.concatenate(dvals) if dvals else np.zeros(0),
        Zc,
    )


def _hcat(parts, rows):
    return np.hstack(parts) if parts else np.zeros((rows, 0), dtype=complex)


def _require_nun(T, tol):
    ok, _ = is_non_unitary_normal(T, tol)
    if not ok:
        raise PreconditionFailed("operation requires a non-unitary normal isometry")


def enumerate_generic(
    T: GIsometry, tol: ToleranceConfig = DEFAULT_TOL, max_k: int = DEFAULT_MAX_K, check=True
):
    """All ``2^k`` generic fixed points, sign patterns in lexicographic order
    (``+1`` before ``-1``, blocks by decreasing ``a``, then index)."""
    if check:
        _require_nun(T, tol)
    _, _, Z, Y, lam, a, d, Zc = _paired_basis(T, tol)
    k = Z.shape[1]
    if k > max_k:
        raise KTooLarge(f"k = {k} exceeds max_k = {max_k}")
    z_basis = np.hstack([Z, Zc])
    out = []
    for theta in itertools.product((1, -1), repeat=k):
        eps = np.array(theta, dtype=float)
        F = (Y * eps) @ adjoint(Z)
        out.append(
            GenericFixedPoint(
                F=F,
                theta=theta,
                z_basis=z_basis,
                eigenvalues=lam * (a + eps * d),
                norm=operator_norm(F),
                residual=verify_fixed(T, F, tol),
            )
        )
    return out


def _cluster_complex(values, radius):
    """Single-linkage groups of complex values closer than ``radius``."""
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= radius:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


def _null_space(M, thresh):
    if M.shape[1] == 0:
        return np.zeros((0, 0), dtype=complex)
    _, s, Vh = np.linalg.svd(M, full_matrices=True)
    s_full = np.zeros(Vh.shape[0])
    s_full[: s.size] = s
    return adjoint(Vh[s_full <= thresh])


def _orthonormal_columns(X):
    if X.shape[1] == 0:
        return X
    U, s, _ = np.linalg.svd(X, full_matrices=False)
    return U[:, s > _RANK_TOL * max(1.0, s[0])]


def detect_generic(T: GIsometry, tol: ToleranceConfig = DEFAULT_TOL) -> DetectionReport:
    """Count generic fixed points from the eigenvectors of ``T`` alone.

    Looks for eigenvalue pairs whose eigenspaces contain ``(y, z)`` and
    ``(-y, z)`` respectively, collects the ``z`` directions they share and the
    eigenvectors of the form ``(0, z)``, and checks that these ``z`` assemble
    into an orthonormal basis of ``C^n``.  The element is non-unitary normal
    exactly when the number ``q`` of paired directions equals ``dim ran C``.
    """
    m, n = T.m, T.n
    M = T.matrix
    scale = max(1.0, operator_norm(M))
    k = offdiagonal_rank(T, tol)

    w, X = np.linalg.eig(M)
    X = X / np.linalg.norm(X, axis=0)
    eig_res = np.linalg.norm(M @ X - X * w, axis=0).max() / scale
    if eig_res > 100 * tol.eq_tol:
        raise IllConditionedEigenbasis(f"eigenvector residual {eig_res:.3e}")

    merge = 100 * tol.eq_tol * scale
    pair_tol = 1000 * tol.eq_tol
    groups = _cluster_complex(w, merge)
    mus = [complex(np.mean(w[g])) for g in groups]
    spaces = [_orthonormal_columns(X[:, g]) for g in groups]

    J = np.concatenate([-np.ones(m), np.ones(n)])
    null_z = []
    for W in spaces:
        a = _null_space(W[:m], pair_tol)
        if a.shape[1]:
            null_z.append(W[m:] @ a)

    pair_z = []
    details = []
    for c, d in itertools.combinations(range(len(spaces)), 2):
        if abs(mus[c] + mus[d]) <= merge:
            continue
        Wc, Wd = spaces[c], spaces[d]
        ab = _null_space(np.hstack([Wc, -(J[:, None] * Wd)]), pair_tol)
        if ab.shape[1] == 0:
            continue
        V = Wc @ ab[: Wc.shape[1]]
        Z = _orthonormal_columns(V[m:])
        pair_z.append(Z)
        details.append({"mu": mus[c], "mu_prime": mus[d], "dim": int(Z.shape[1])})

    q = sum(Z.shape[1] for Z in pair_z)
    parts = list(pair_z)
    if null_z:
        parts.append(_orthonormal_columns(np.hstack(null_z)))
    Zall = np.hstack(parts) if parts else np.zeros((n, 0), dtype=complex)
    completable = Zall.shape[1] == n and operator_norm(adjoint(Zall) @ Zall - np.eye(n)) <= pair_tol * 10
    count = 2**q if completable else 0

    if k == 0:
        conclusion = Conclusion.UNITARY
    elif completable and q == k:
        conclusion = Conclusion.NON_UNITARY_NORMAL
    else:
        conclusion = Conclusion.NOT_NORMAL
    return DetectionReport(count, k, q, conclusion, completable, details)


def common_eigen_fixed_points(T: GIsometry, tol: ToleranceConfig = DEFAULT_TOL, check=True):
    """Fixed points that agree with the all-plus generic point on ``K'`` and send
    ``mu``-eigenvectors of ``V`` on ``K'perp`` to ``mu``-eigenvectors of ``U`` on
    ``(ran C)perp``, one per common eigenvalue ``mu`` (ascending phase)."""
    if check:
        _require_nun(T, tol)
    F, S, Z, Y, *_ = _paired_basis(T, tol)
    F_plus = Y @ adjoint(Z)
    Q = S.basis_ranCperp()
    P = S.basis_Kperp
    if Q.shape[1] == 0 or P.shape[1] == 0:
        return []
    muU, cU, _ = normal_eig(adjoint(Q) @ F.U @ Q)
    muV, cV, _ = normal_eig(adjoint(P) @ F.V @ P)
    hU, zV = Q @ cU, P @ cV
    out = []
    for g in sorted(_cluster_complex(muV, tol.eq_tol), key=lambda g: np.angle(np.mean(muV[g]))):
        mu = complex(np.mean(muV[g]))
        u_idx = [j for j in range(len(muU)) if abs(muU[j] - mu) <= tol.eq_tol]
        if not u_idx:
            continue
        pairs = list(zip(g, u_idx))
        Fm = F_plus.copy()
        for jv, ju in pairs:
            Fm = Fm + np.outer(hU[:, ju], np.conj(zV[:, jv]))
        res = verify_fixed(T, Fm, tol)
        if res > 10 * tol.eq_tol:
            raise InternalInconsistency(f"common-eigenvalue construction moved by {res:.3e}")
        out.append(CommonFixedPoint(Fm, mu, len(pairs), operator_norm(Fm), res))
    return out
