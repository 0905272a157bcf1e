"""The open unit ball of ``m x n`` complex matrices.

Moebius maps ``T_B``, the Caratheodory distance, the indefinite Hermitian form
on ``C^m (+) C^n`` and the causal type of vectors under it.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DimensionMismatch, NotStrictContraction, SingularFactor, ZeroVector
from .linalg import (
    DEFAULT_TOL,
    ToleranceConfig,
    adjoint,
    as_matrix,
    operator_norm,
    positive_inv_sqrt,
    positive_sqrt,
)

__all__ = [
    "Contraction",
    "MobiusMap",
    "SpaceVector",
    "CausalType",
    "check_contraction",
    "mobius_map",
    "mobius_apply",
    "mobius_inverse",
    "caratheodory_distance",
    "intertwine_residual",
    "hermitian_form",
    "classify_vector",
]

_ATANH_CAP = 1.0 - 1e-15
_COND_LIMIT = 1e12


def check_contraction(A, strict=True, tol: ToleranceConfig = DEFAULT_TOL):
    """Return ``A`` as an array after checking it lies in the open (or closed) ball."""
    if isinstance(A, Contraction):
        if strict and not A.strict:
            A = as_matrix(A.matrix)
        else:
            return A.matrix
    A = as_matrix(A)
    nrm = operator_norm(A)
    if strict and not nrm < 1.0 - tol.eq_tol:
        raise NotStrictContraction(f"||A|| = {nrm!r} is not < 1")
    if not strict and nrm > 1.0 + tol.eq_tol:
        raise NotStrictContraction(f"||A|| = {nrm!r} exceeds 1")
    return A


@dataclass(frozen=True)
class Contraction:
    """A validated point of the open ball (``strict``) or of its closure."""

    matrix: np.ndarray
    strict: bool = True
    tol: ToleranceConfig = field(default=DEFAULT_TOL, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "matrix", check_contraction(self.matrix, self.strict, self.tol))

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def norm(self) -> float:
        return operator_norm(self.matrix)


@dataclass(frozen=True)
class MobiusMap:
    """``T_B(A) = (I-BB*)^{-1/2} (A+B) (I+B*A)^{-1} (I-B*B)^{1/2}``.

    Build with :func:`mobius_map`; the two defect factors are cached.
    """

    center: np.ndarray
    left_defect_inv_sqrt: np.ndarray
    right_defect_sqrt: np.ndarray

    @property
    def shape(self):
        return self.center.shape

    def __call__(self, A, tol: ToleranceConfig = DEFAULT_TOL):
        return mobius_apply(self, A, tol)


def mobius_map(B, tol: ToleranceConfig = DEFAULT_TOL) -> MobiusMap:
    B = check_contraction(B, strict=True, tol=tol)
    m, n = B.shape
    left = positive_inv_sqrt(np.eye(m) - B @ adjoint(B), tol)
    right = positive_sqrt(np.eye(n) - adjoint(B) @ B, tol)
    return MobiusMap(B, left, right)


def mobius_apply(T_B, A, tol: ToleranceConfig = DEFAULT_TOL):
    """Evaluate the Moebius map at ``A``.

    ``A`` may sit on the closed ball; the center of a :class:`MobiusMap` is
    always strict, which keeps ``I + B*A`` invertible.
    """
    if not isinstance(T_B, MobiusMap):
        T_B = mobius_map(T_B, tol)
    A = check_contraction(A, strict=False, tol=tol)
    B = T_B.center
    if A.shape != B.shape:
        raise DimensionMismatch(f"point has shape {A.shape}, map acts on {B.shape}")
    n = B.shape[1]
    denom = np.eye(n) + adjoint(B) @ A
    if np.linalg.cond(denom) > _COND_LIMIT:
        raise SingularFactor("I + B*A is numerically singular")
    # (A+B)(I+B*A)^{-1} via a solve on the right
    right = np.linalg.solve(denom.T, (A + B).T).T
    return T_B.left_defect_inv_sqrt @ right @ T_B.right_defect_sqrt


def mobius_inverse(T_B: MobiusMap) -> MobiusMap:
    """``T_B^{-1} = T_{-B}``; the cached factors only depend on ``BB*`` and ``B*B``."""
    return MobiusMap(-T_B.center, T_B.left_defect_inv_sqrt, T_B.right_defect_sqrt)


def caratheodory_distance(A1, A2, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """``atanh(||T_{-A2}(A1)||)`` for two points of the open ball."""
    A1 = check_contraction(A1, strict=True, tol=tol)
    A2 = check_contraction(A2, strict=True, tol=tol)
    if A1.shape != A2.shape:
        raise DimensionMismatch(f"shapes {A1.shape} and {A2.shape} differ")
    r = operator_norm(mobius_apply(mobius_map(-A2, tol), A1, tol))
    return float(np.arctanh(min(max(r, 0.0), _ATANH_CAP)))


def intertwine_residual(T, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """``||T (I-T*T)^{1/2} - (I-TT*)^{1/2} T||`` for a contraction ``T``."""
    T = check_contraction(T, strict=False, tol=tol)
    m, n = T.shape
    right = positive_sqrt(np.eye(n) - adjoint(T) @ T, tol)
    left = positive_sqrt(np.eye(m) - T @ adjoint(T), tol)
    return operator_norm(T @ right - left @ T)


@dataclass(frozen=True)
class SpaceVector:
    """A vector ``(h, k)`` of ``C^m (+) C^n``."""

    h: np.ndarray
    k: np.ndarray

    def __post_init__(self):
        h = np.asarray(self.h, dtype=complex).ravel()
        k = np.asarray(self.k, dtype=complex).ravel()
        if not (np.all(np.isfinite(h)) and np.all(np.isfinite(k))):
            raise ValueError("SpaceVector entries must be finite")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "k", k)

    @property
    def dims(self):
        return (self.h.size, self.k.size)

    def stacked(self):
        return np.concatenate([self.h, self.k])

    @classmethod
    def from_stacked(cls, v, m: int):
        v = np.asarray(v, dtype=complex).ravel()
        return cls(v[:m], v[m:])


class CausalType(str, Enum):
    SPACE_LIKE = "SpaceLike"
    LIGHT_LIKE = "LightLike"
    TIME_LIKE = "TimeLike"


def hermitian_form(v: SpaceVector, w: SpaceVector) -> complex:
    """``<v.h, w.h> - <v.k, w.k>``, linear in ``v`` and conjugate-linear in ``w``."""
    if v.dims != w.dims:
        raise DimensionMismatch(f"vector dimensions {v.dims} and {w.dims} differ")
    return complex(np.vdot(w.h, v.h) - np.vdot(w.k, v.k))


def classify_vector(v: SpaceVector, tol: ToleranceConfig = DEFAULT_TOL) -> CausalType:
    if not (np.any(v.h) or np.any(v.k)):
        raise ZeroVector("the zero vector has no causal type")
    s = hermitian_form(v, v).real
    if s > tol.eq_tol:
        return CausalType.SPACE_LIKE
    if s < -tol.eq_tol:
        return CausalType.TIME_LIKE
    return CausalType.LIGHT_LIKE
