"""The group of invertible operators on ``C^m (+) C^n`` preserving the
indefinite form ``<h1,h2> - <k1,k2>``, and its action on the matrix ball by
linear fractional maps ``A -> (T11 A + T12)(T21 A + T22)^{-1}``.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .ball import check_contraction
from .errors import (
    DimensionMismatch,
    NotAMember,
    NotUnitary,
    ReconstructionFailure,
    SingularDenominator,
    SquareDims,
)
from .linalg import (
    DEFAULT_TOL,
    ToleranceConfig,
    adjoint,
    as_matrix,
    is_unitary,
    operator_norm,
    positive_inv_sqrt,
    positive_sqrt,
)

__all__ = [
    "RELATION_NAMES",
    "RelationReport",
    "GIsometry",
    "FactoredIsometry",
    "verify_relations",
    "from_factors",
    "inverse",
    "factorize",
    "act",
    "compose",
    "is_center",
    "identity",
]

RELATION_NAMES = (
    "T11*T11 - T21*T21 = I",
    "T22*T22 - T12*T12 = I",
    "T12*T11 - T22*T21 = 0",
    "T11T11* - T12T12* = I",
    "T22T22* - T21T21* = I",
    "T21T11* - T22T12* = 0",
)

_COND_LIMIT = 1e12


def _blocks(M, m):
    return M[:m, :m], M[:m, m:], M[m:, :m], M[m:, m:]


@dataclass(frozen=True)
class RelationReport:
    residuals: dict
    eq_tol: float

    @property
    def is_member(self) -> bool:
        return all(r <= self.eq_tol for r in self.residuals.values())

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())


def verify_relations(T, m: int, n: int, tol: ToleranceConfig = DEFAULT_TOL) -> RelationReport:
    """Operator-norm residuals of the six block relations defining membership."""
    T = np.asarray(T.matrix if isinstance(T, GIsometry) else T, dtype=complex)
    if T.shape != (m + n, m + n):
        raise DimensionMismatch(f"expected a {(m + n, m + n)} matrix, got {T.shape}")
    B, C, D, E = _blocks(T, m)
    Im, In = np.eye(m), np.eye(n)
    Bs, Cs, Ds, Es = adjoint(B), adjoint(C), adjoint(D), adjoint(E)
    lhs_rhs = (
        (Bs @ B - Ds @ D, Im),
        (Es @ E - Cs @ C, In),
        (Cs @ B - Es @ D, 0.0),
        (B @ Bs - C @ Cs, Im),
        (E @ Es - D @ Ds, In),
        (D @ Bs - E @ Cs, 0.0),
    )
    res = {name: operator_norm(l - r) for name, (l, r) in zip(RELATION_NAMES, lhs_rhs)}
    return RelationReport(res, tol.eq_tol)


@dataclass(frozen=True)
class GIsometry:
    """An element of the group, stored as its full ``(m+n) x (m+n)`` matrix.

    Construct through :meth:`from_matrix` (which verifies the relations) or
    :func:`from_factors`.
    """

    matrix: np.ndarray
    m: int
    n: int

    @classmethod
    def from_matrix(cls, matrix, m: int, n: int, tol: ToleranceConfig = DEFAULT_TOL, verify=True):
        matrix = as_matrix(matrix)
        if m == n:
            raise SquareDims("m == n is not supported")
        if verify:
            rep = verify_relations(matrix, m, n, tol)
            if not rep.is_member:
                raise NotAMember(
                    f"matrix violates the group relations (max residual {rep.max_residual:.3e})",
                    rep.residuals,
                )
        elif matrix.shape != (m + n, m + n):
            raise DimensionMismatch(f"expected a {(m + n, m + n)} matrix, got {matrix.shape}")
        return cls(matrix, m, n)

    @property
    def T11(self):
        return self.matrix[: self.m, : self.m]

    @property
    def T12(self):
        return self.matrix[: self.m, self.m :]

    @property
    def T21(self):
        return self.matrix[self.m :, : self.m]

    @property
    def T22(self):
        return self.matrix[self.m :, self.m :]

    @property
    def dims(self):
        return (self.m, self.n)

    def __call__(self, A, tol: ToleranceConfig = DEFAULT_TOL):
        return act(self, A, tol)

    def __matmul__(self, other):
        if isinstance(other, GIsometry):
            return compose(self, other)
        return NotImplemented


@dataclass(frozen=True)
class FactoredIsometry:
    """``(A, U, V)`` with the positive parts derived from the center ``A``.

    The group element is ``[[Bpos U, Cpos V], [Cpos* U, Epos V]]`` where
    ``Bpos = (I-AA*)^{-1/2}``, ``Cpos = Bpos A`` and ``Epos = (I-A*A)^{-1/2}``.
    """

    A: np.ndarray
    U: np.ndarray
    V: np.ndarray
    tol: ToleranceConfig = field(default=DEFAULT_TOL, repr=False, compare=False)

    @property
    def m(self):
        return self.A.shape[0]

    @property
    def n(self):
        return self.A.shape[1]

    @cached_property
    def Bpos(self):
        return positive_inv_sqrt(np.eye(self.m) - self.A @ adjoint(self.A), self.tol)

    @cached_property
    def Epos(self):
        return positive_inv_sqrt(np.eye(self.n) - adjoint(self.A) @ self.A, self.tol)

    @cached_property
    def Cpos(self):
        return self.Bpos @ self.A

    def positive_part_residuals(self) -> dict:
        B, C, E = self.Bpos, self.Cpos, self.Epos
        return {
            "B^2 - CC* = I": operator_norm(B @ B - C @ adjoint(C) - np.eye(self.m)),
            "E^2 - C*C = I": operator_norm(E @ E - adjoint(C) @ C - np.eye(self.n)),
            "BC = CE": operator_norm(B @ C - C @ E),
            "U*U = I": operator_norm(adjoint(self.U) @ self.U - np.eye(self.m)),
            "V*V = I": operator_norm(adjoint(self.V) @ self.V - np.eye(self.n)),
        }

    def matrix(self):
        B, C, E = self.Bpos, self.Cpos, self.Epos
        U, V = self.U, self.V
        return np.block([[B @ U, C @ V], [adjoint(C) @ U, E @ V]])


def from_factors(A, U, V, tol: ToleranceConfig = DEFAULT_TOL, verify=True) -> GIsometry:
    """The group element with center ``A`` and unitary parts ``U`` (on ``C^m``), ``V`` (on ``C^n``).

    A global phase ``e^{it}`` is expressed by multiplying both ``U`` and ``V`` by it.
    """
    A = check_contraction(A, strict=True, tol=tol)
    m, n = A.shape
    if m == n:
        raise SquareDims("m == n is not supported")
    U = as_matrix(U, "U")
    V = as_matrix(V, "V")
    if U.shape != (m, m) or V.shape != (n, n):
        raise DimensionMismatch(f"U must be {m}x{m} and V {n}x{n}, got {U.shape}, {V.shape}")
    if not is_unitary(U, tol):
        raise NotUnitary("U is not unitary")
    if not is_unitary(V, tol):
        raise NotUnitary("V is not unitary")
    F = FactoredIsometry(A, U, V, tol)
    return GIsometry.from_matrix(F.matrix(), m, n, tol, verify=verify)


def identity(m: int, n: int) -> GIsometry:
    if m == n:
        raise SquareDims("m == n is not supported")
    return GIsometry(np.eye(m + n, dtype=complex), m, n)


def inverse(T: GIsometry) -> GIsometry:
    """Closed-form inverse ``[[T11*, -T21*], [-T12*, T22*]]``."""
    M = np.block([[adjoint(T.T11), -adjoint(T.T21)], [-adjoint(T.T12), adjoint(T.T22)]])
    return GIsometry(M, T.m, T.n)


def factorize(T: GIsometry, tol: ToleranceConfig = DEFAULT_TOL) -> FactoredIsometry:
    """Recover ``(A, U, V)`` from a group element.

    ``A = T12 T22^{-1}`` is the image of the origin; ``U`` and ``V`` are what
    is left after stripping the positive parts from the diagonal blocks.
    """
    m, n = T.m, T.n
    A = np.linalg.solve(T.T22.T, T.T12.T).T
    A = check_contraction(A, strict=True, tol=tol)
    Bsqrt = positive_sqrt(np.eye(m) - A @ adjoint(A), tol)
    Esqrt = positive_sqrt(np.eye(n) - adjoint(A) @ A, tol)
    U = Bsqrt @ T.T11
    V = Esqrt @ T.T22
    F = FactoredIsometry(A, U, V, tol)
    limit = 100 * tol.eq_tol * max(1.0, operator_norm(T.matrix))
    err = operator_norm(F.matrix() - T.matrix)
    if err > limit:
        raise ReconstructionFailure(f"factorization does not reproduce T (residual {err:.3e})")
    for name, W in (("U", U), ("V", V)):
        dev = operator_norm(adjoint(W) @ W - np.eye(W.shape[0]))
        if dev > limit:
            raise ReconstructionFailure(f"recovered {name} is not unitary (deviation {dev:.3e})")
    return F


def act(T: GIsometry, A, tol: ToleranceConfig = DEFAULT_TOL):
    """``(T11 A + T12)(T21 A + T22)^{-1}`` for ``A`` in the closed ball."""
    A = check_contraction(A, strict=False, tol=tol)
    if A.shape != (T.m, T.n):
        raise DimensionMismatch(f"point has shape {A.shape}, expected {(T.m, T.n)}")
    denom = T.T21 @ A + T.T22
    if np.linalg.cond(denom) > _COND_LIMIT:
        raise SingularDenominator("T21 A + T22 is numerically singular")
    num = T.T11 @ A + T.T12
    return np.linalg.solve(denom.T, num.T).T


def compose(T1: GIsometry, T2: GIsometry) -> GIsometry:
    if T1.dims != T2.dims:
        raise DimensionMismatch(f"cannot compose {T1.dims} with {T2.dims}")
    return GIsometry(T1.matrix @ T2.matrix, T1.m, T1.n)


def is_center(T: GIsometry, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True when ``T`` is a unimodular multiple of the identity."""
    c = T.matrix[0, 0]
    if abs(abs(c) - 1.0) > tol.eq_tol:
        return False
    return operator_norm(T.matrix - c * np.eye(T.m + T.n)) <= tol.eq_tol
