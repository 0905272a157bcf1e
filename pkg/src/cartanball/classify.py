"""Classification of group elements: unitary, normal, self-adjoint and
non-unitary normal, plus the block structure and spectrum of the latter.

Each structural criterion is computed next to a brute-force operator check.
A verdict is only returned when both routes agree; a disagreement far outside
the tolerance band raises :class:`InternalInconsistency`.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import block_diag

from .errors import (
    DegenerateBlockGauge,
    InconsistentPair,
    InternalInconsistency,
    PreconditionFailed,
    SpectrumMismatch,
    StructureResidual,
)
from .group import GIsometry, factorize, verify_relations
from .linalg import (
    DEFAULT_TOL,
    ToleranceConfig,
    adjoint,
    multiset_distance,
    normal_eig,
    operator_norm,
)
from .spectral import decompose, projector

__all__ = [
    "Classification",
    "BlockView",
    "SpectrumEntry",
    "classify",
    "is_unitary_isometry",
    "is_normal",
    "is_non_unitary_normal",
    "is_self_adjoint",
    "block_decompose",
    "s_block_matrix",
    "s_block_eigen",
    "spectrum_normal",
]

# a verdict mismatch with one residual this many tolerances away is a bug, not noise
_GROSS = 1000.0


def _check_agreement(what, ok_a, res_a, tol_a, ok_b, res_b, tol_b):
    if ok_a == ok_b:
        return
    if (ok_a and res_b > _GROSS * tol_b) or (ok_b and res_a > _GROSS * tol_a):
        raise InternalInconsistency(
            f"{what}: brute force says {ok_a} (residual {res_a:.3e}) but the structural "
            f"criterion says {ok_b} (residual {res_b:.3e})"
        )


@dataclass(frozen=True)
class Classification:
    is_member: bool
    is_unitary: bool = False
    is_normal: bool = False
    is_self_adjoint: bool = False
    is_non_unitary_normal: bool = False
    residuals: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.is_non_unitary_normal and not (self.is_normal and not self.is_unitary):
            raise InternalInconsistency("non-unitary normal must be normal and not unitary")
        if self.is_self_adjoint and not self.is_normal:
            raise InternalInconsistency("self-adjoint must be normal")


def is_unitary_isometry(T: GIsometry, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Unitary iff the off-diagonal block vanishes; cross-checked against ``T*T = I``."""
    r_block = operator_norm(T.T12)
    r_brute = operator_norm(adjoint(T.matrix) @ T.matrix - np.eye(T.m + T.n))
    ok_block = r_block <= tol.eq_tol
    ok_brute = r_brute <= tol.eq_tol
    _check_agreement("unitarity", ok_brute, r_brute, tol.eq_tol, ok_block, r_block, tol.eq_tol)
    return ok_block and ok_brute


def _commutator_residuals(F):
    U, V = F.U, F.V
    B, C, E = F.Bpos, F.Cpos, F.Epos
    return {
        "UB - BU": operator_norm(U @ B - B @ U),
        "UC - CV": operator_norm(U @ C - C @ V),
        "VE - EV": operator_norm(V @ E - E @ V),
    }


def is_normal(T: GIsometry, tol: ToleranceConfig = DEFAULT_TOL):
    """Normality by ``TT* = T*T`` and by commutation of the factors.

    Returns ``(verdict, residuals)``.
    """
    M = T.matrix
    r_brute = operator_norm(M @ adjoint(M) - adjoint(M) @ M)
    res = {"TT* - T*T": r_brute}
    res.update(_commutator_residuals(factorize(T, tol)))
    r_struct = max(res["UB - BU"], res["UC - CV"], res["VE - EV"])
    ok_brute = r_brute <= tol.eq_tol
    ok_struct = r_struct <= 10 * tol.eq_tol
    _check_agreement("normality", ok_brute, r_brute, tol.eq_tol, ok_struct, r_struct, 10 * tol.eq_tol)
    return ok_brute and ok_struct, res


def _block_structure_residuals(F, S):
    n, m = F.n, F.m
    res = {"U(M_i) in M_i": 0.0, "V(K_i) in K_i": 0.0, "[U|M_i] - [V|K_i]": 0.0}
    for b in S.blocks:
        PM = projector(b.basis_M)
        PK = b.basis_K @ adjoint(b.basis_K)
        res["U(M_i) in M_i"] = max(res["U(M_i) in M_i"], operator_norm((np.eye(m) - PM) @ F.U @ PM))
        res["V(K_i) in K_i"] = max(res["V(K_i) in K_i"], operator_norm((np.eye(n) - PK) @ F.V @ PK))
        dR = operator_norm(b.coordinates_on_M(F.U) - b.coordinates_on_K(F.V))
        res["[U|M_i] - [V|K_i]"] = max(res["[U|M_i] - [V|K_i]"], dR)
    return res


def is_non_unitary_normal(T: GIsometry, tol: ToleranceConfig = DEFAULT_TOL):
    """Block criterion: ``U`` keeps every ``M_i``, ``V`` keeps every ``K_i``,
    and both act by the same coordinate matrix.  Returns ``(verdict, residuals)``."""
    if is_unitary_isometry(T, tol):
        return False, {"||T12||": operator_norm(T.T12)}
    F = factorize(T, tol)
    S = decompose(F, tol)
    res = _block_structure_residuals(F, S)
    r_struct = max(res.values())
    ok_struct = r_struct <= 10 * tol.eq_tol
    ok_normal, nres = is_normal(T, tol)
    r_normal = nres["TT* - T*T"]
    _check_agreement(
        "non-unitary normality", ok_normal, r_normal, tol.eq_tol, ok_struct, r_struct, 10 * tol.eq_tol
    )
    res.update(nres)
    return ok_struct and ok_normal, res


def is_self_adjoint(T: GIsometry, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    M = T.matrix
    r_brute = operator_norm(M - adjoint(M))
    ok_brute = r_brute <= tol.eq_tol
    ok_normal, _ = is_normal(T, tol)
    if not ok_normal:
        if ok_brute:
            raise InternalInconsistency("T = T* but T is not normal")
        return False
    F = factorize(T, tol)
    r_struct = max(operator_norm(F.U - adjoint(F.U)), operator_norm(F.V - adjoint(F.V)))
    ok_struct = r_struct <= 10 * tol.eq_tol
    _check_agreement("self-adjointness", ok_brute, r_brute, tol.eq_tol, ok_struct, r_struct, 10 * tol.eq_tol)
    return ok_brute and ok_struct


def classify(T, m=None, n=None, tol: ToleranceConfig = DEFAULT_TOL) -> Classification:
    """Full report for a group element or a raw ``(m+n)``-square matrix.

    Raw matrices are checked against the group relations first; a non-member
    is reported as such and not classified further.
    """
    if isinstance(T, GIsometry):
        m, n, M = T.m, T.n, T.matrix
    else:
        if m is None or n is None:
            raise ValueError("m and n are required for a raw matrix")
        M = np.asarray(T, dtype=complex)
    rep = verify_relations(M, m, n, tol)
    residuals = {f"relation: {k}": v for k, v in rep.residuals.items()}
    if not rep.is_member:
        return Classification(is_member=False, residuals=residuals)
    G = T if isinstance(T, GIsometry) else GIsometry(M, m, n)
    unitary = is_unitary_isometry(G, tol)
    residuals["||T12||"] = operator_norm(G.T12)
    normal, nres = is_normal(G, tol)
    residuals.update(nres)
    if unitary:
        nun = False
    else:
        nun, bres = is_non_unitary_normal(G, tol)
        residuals.update(bres)
    sa = is_self_adjoint(G, tol)
    residuals["T - T*"] = operator_norm(M - adjoint(M))
    return Classification(True, unitary, normal, sa, nun, residuals)


@dataclass(frozen=True)
class BlockEntry:
    a: float
    delta: float
    k_i: int
    Ti: np.ndarray  # 2k_i x 2k_i coordinate matrix on (xi, 0) u (0, e)
    R: np.ndarray  # k_i x k_i coordinate matrix of V on K_i
    basis: np.ndarray  # (m+n) x 2k_i, the columns (xi, 0) then (0, e)
    pattern_residual: float


@dataclass(frozen=True)
class BlockView:
    """``T`` as a direct sum of ``2k_i``-dimensional blocks, ``U`` on
    ``(ran C)perp`` and ``V`` on ``K'perp``."""

    blocks: tuple
    T_prime: np.ndarray
    T_dprime: np.ndarray
    basis_ranCperp: np.ndarray
    basis_Kperp: np.ndarray
    m: int
    n: int

    def change_of_basis(self):
        m, n = self.m, self.n
        Q, P = self.basis_ranCperp, self.basis_Kperp
        cols = [b.basis for b in self.blocks]
        cols.append(np.vstack([Q, np.zeros((n, Q.shape[1]))]))
        cols.append(np.vstack([np.zeros((m, P.shape[1])), P]))
        return np.hstack(cols)

    def reconstruct(self):
        """``W D W^{-1}`` with ``D`` the block-diagonal coordinate form."""
        W = self.change_of_basis()
        D = block_diag(*[b.Ti for b in self.blocks], self.T_prime, self.T_dprime)
        return W @ D @ np.linalg.inv(W)


def s_block_matrix(a, delta, k_i, R=None):
    """``[[a R, R], [delta^2 R, a R]]`` (``R = I`` by default)."""
    R = np.eye(k_i) if R is None else R
    return np.block([[a * R, R], [delta**2 * R, a * R]])


def _require_nun(T, tol):
    ok, _ = is_non_unitary_normal(T, tol)
    if not ok:
        raise PreconditionFailed("operation requires a non-unitary normal isometry")


def block_decompose(T: GIsometry, tol: ToleranceConfig = DEFAULT_TOL, check=True) -> BlockView:
    if check:
        _require_nun(T, tol)
    F = factorize(T, tol)
    S = decompose(F, tol)
    m, n = T.m, T.n
    entries = []
    for b in S.blocks:
        k = b.k_i
        X = np.zeros((m + n, 2 * k), dtype=complex)
        X[:m, :k] = b.basis_M
        X[m:, k:] = b.basis_K
        dual = np.zeros((2 * k, m + n), dtype=complex)
        dual[:k, :m] = adjoint(b.basis_M) / b.delta**2
        dual[k:, m:] = adjoint(b.basis_K)
        Ti = dual @ T.matrix @ X
        R = b.coordinates_on_K(F.V)
        pat = operator_norm(Ti - s_block_matrix(b.a, b.delta, k, R))
        if pat > 100 * tol.eq_tol:
            raise StructureResidual(f"block a={b.a:.6g} deviates from the expected pattern by {pat:.3e}")
        entries.append(BlockEntry(b.a, b.delta, k, Ti, R, X, pat))
    Q = S.basis_ranCperp()
    P = S.basis_Kperp
    return BlockView(
        tuple(entries), adjoint(Q) @ F.U @ Q, adjoint(P) @ F.V @ P, Q, P, m, n
    )


@dataclass(frozen=True)
class SBlockEigen:
    values: np.ndarray  # a+delta (k_i times) then a-delta (k_i times)
    vectors: np.ndarray  # columns: (+1/delta e_j, e_j) then (-1/delta e_j, e_j)
    numeric_gap: float  # multiset distance to the numerical eigenvalues


def s_block_eigen(a, delta, k_i, tol: ToleranceConfig = DEFAULT_TOL) -> SBlockEigen:
    """Closed-form eigen-data of ``[[a I, I], [delta^2 I, a I]]``, checked numerically."""
    if abs(a * a - 1.0 - delta * delta) > tol.eq_tol * max(1.0, a * a):
        raise InconsistentPair(f"a^2 - 1 - delta^2 = {a * a - 1 - delta * delta:.3e}")
    vals = np.concatenate([np.full(k_i, a + delta), np.full(k_i, a - delta)])
    I = np.eye(k_i)
    vecs = np.vstack([np.hstack([I / delta, -I / delta]), np.hstack([I, I])])
    S = s_block_matrix(a, delta, k_i)
    gap = multiset_distance(vals, np.linalg.eigvals(S))
    scale = max(1.0, a + delta)
    if gap > 10 * tol.eq_tol * scale or operator_norm(S @ vecs - vecs * vals) > 10 * tol.eq_tol * scale:
        raise SpectrumMismatch(f"closed-form eigen-data off by {gap:.3e}")
    return SBlockEigen(vals, vecs, gap)


@dataclass(frozen=True)
class SpectrumEntry:
    value: complex
    kind: str  # "plus", "minus", "U on (ran C)perp", "V on K'perp"
    vector: np.ndarray
    block: int = -1
    index: int = -1


def spectrum_normal(T: GIsometry, tol: ToleranceConfig = DEFAULT_TOL, check=True):
    """Eigenvalues ``lambda (a +- delta)`` per block plus the unimodular
    eigenvalues of the two complements, each with its eigenvector.

    The assembled multiset is compared with ``numpy.linalg.eigvals(T)``.
    """
    if check:
        _require_nun(T, tol)
    F = factorize(T, tol)
    S = decompose(F, tol)
    m = T.m
    out = []
    for i, b in enumerate(S.blocks):
        lam, c, off = normal_eig(b.coordinates_on_K(F.V))
        if off > 100 * tol.eq_tol:
            raise DegenerateBlockGauge(f"block {i}: coordinate matrix is not normal (off-diagonal {off:.3e})")
        Z = b.basis_K @ c
        Y = F.Cpos @ Z / b.delta
        for j in range(b.k_i):
            for sign, kind in ((1.0, "plus"), (-1.0, "minus")):
                v = np.concatenate([sign * Y[:, j], Z[:, j]])
                out.append(SpectrumEntry(complex(lam[j] * (b.a + sign * b.delta)), kind, v, i, j))
    Q = S.basis_ranCperp()
    mu, c, _ = normal_eig(adjoint(Q) @ F.U @ Q)
    for j in range(len(mu)):
        v = np.concatenate([Q @ c[:, j], np.zeros(T.n)])
        out.append(SpectrumEntry(complex(mu[j]), "U on (ran C)perp", v, -1, j))
    P = S.basis_Kperp
    nu, c, _ = normal_eig(adjoint(P) @ F.V @ P)
    for j in range(len(nu)):
        v = np.concatenate([np.zeros(m), P @ c[:, j]])
        out.append(SpectrumEntry(complex(nu[j]), "V on K'perp", v, -1, j))
    gap = multiset_distance([e.value for e in out], np.linalg.eigvals(T.matrix))
    if gap > 10 * tol.eq_tol * max(1.0, operator_norm(T.matrix)):
        raise SpectrumMismatch(f"assembled spectrum differs from the numerical one by {gap:.3e}")
    return out
