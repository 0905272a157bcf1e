"""Seeded generators for group elements of a prescribed class.

The normal construction picks the singular vectors of the center ``A`` first:
``A = X diag(sigma) Y*``.  Then ``K_i`` is spanned by the columns of ``Y`` that
share a singular value, ``M_i`` by the matching columns of ``X``, and
``U = X diag(R_1, ..., R_l, W') X*``, ``V = Y diag(R_1, ..., R_l, W'') Y*``
makes ``U`` and ``V`` act on ``M_i`` and ``K_i`` through the same matrix ``R_i``.
"""

import numpy as np
from scipy.linalg import block_diag, expm

from .errors import SquareDims
from .group import GIsometry, factorize, from_factors
from .linalg import DEFAULT_TOL, ToleranceConfig, adjoint, random_contraction, random_unitary

__all__ = [
    "KINDS",
    "random_isometry",
    "unitary_isometry",
    "normal_isometry",
    "selfadjoint_isometry",
    "perturb",
    "generate",
    "random_block_sizes",
]

KINDS = ("random", "normal", "unitary", "selfadjoint")


def _check_dims(m, n):
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    if m == n:
        raise SquareDims("m == n is not supported")


def random_isometry(seed, m, n, target_norm=0.6, tol: ToleranceConfig = DEFAULT_TOL) -> GIsometry:
    _check_dims(m, n)
    rng = np.random.default_rng(seed)
    A = random_contraction(rng, m, n, target_norm)
    return from_factors(A, random_unitary(rng, m), random_unitary(rng, n), tol)


def unitary_isometry(seed, m, n, tol: ToleranceConfig = DEFAULT_TOL) -> GIsometry:
    _check_dims(m, n)
    rng = np.random.default_rng(seed)
    return from_factors(np.zeros((m, n)), random_unitary(rng, m), random_unitary(rng, n), tol)


def random_block_sizes(rng, k):
    """A random composition of ``k`` into positive parts."""
    sizes = []
    left = k
    while left:
        s = int(rng.integers(1, left + 1))
        sizes.append(s)
        left -= s
    return sizes


def _levels(rng, count, lo=0.2, hi=None):
    # one singular value per bin keeps distinct levels well separated
    hi = 0.9 if hi is None else hi
    if hi <= lo:
        lo = 0.25 * hi
    edges = np.linspace(lo, hi, count + 1)
    width = edges[1] - edges[0]
    return edges[:-1] + width * (0.25 + 0.5 * rng.random(count))


def _hermitian_involution(rng, k):
    Q = random_unitary(rng, k)
    signs = rng.choice([-1.0, 1.0], size=k)
    return (Q * signs) @ adjoint(Q)


def normal_isometry(
    seed,
    m,
    n,
    k=None,
    block_sizes=None,
    target_norm=None,
    selfadjoint=False,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> GIsometry:
    """A non-unitary normal element with ``dim ran C = k``.

    ``block_sizes`` fixes the multiplicities ``k_i`` (they must sum to ``k``);
    by default a random composition of ``k`` is drawn.  ``target_norm`` caps
    the largest singular value of the center.  With ``selfadjoint`` every
    unitary piece is a Hermitian involution, so the result is self-adjoint.
    """
    _check_dims(m, n)
    rng = np.random.default_rng(seed)
    if block_sizes is not None:
        block_sizes = [int(s) for s in block_sizes]
        if k is None:
            k = sum(block_sizes)
        elif sum(block_sizes) != k:
            raise ValueError("block sizes must sum to k")
    if k is None:
        k = min(m, n)
    if not 1 <= k <= min(m, n):
        raise ValueError(f"k must lie in [1, {min(m, n)}]")
    if block_sizes is None:
        block_sizes = random_block_sizes(rng, k)
    if any(s < 1 for s in block_sizes):
        raise ValueError("block sizes must be positive")

    levels = _levels(rng, len(block_sizes), hi=target_norm)
    sigma = np.concatenate([np.full(s, lv) for s, lv in zip(block_sizes, levels)])
    X = random_unitary(rng, m)
    Y = random_unitary(rng, n)
    A = X[:, :k] @ np.diag(sigma) @ adjoint(Y[:, :k])

    piece = _hermitian_involution if selfadjoint else random_unitary
    Rs = [piece(rng, s) for s in block_sizes]
    Wp = [piece(rng, m - k)] if m > k else []
    Wpp = [piece(rng, n - k)] if n > k else []
    U = X @ block_diag(*Rs, *Wp) @ adjoint(X)
    V = Y @ block_diag(*Rs, *Wpp) @ adjoint(Y)
    return from_factors(A, U, V, tol)


def selfadjoint_isometry(seed, m, n, k=None, block_sizes=None, tol: ToleranceConfig = DEFAULT_TOL):
    return normal_isometry(seed, m, n, k, block_sizes, selfadjoint=True, tol=tol)


def perturb(T: GIsometry, seed, size=0.1, tol: ToleranceConfig = DEFAULT_TOL) -> GIsometry:
    """Replace ``U`` by ``U exp(i size H)`` for a random Hermitian ``H``.

    The result stays in the group; for a normal ``T`` it is generically
    not normal any more.
    """
    rng = np.random.default_rng(seed)
    F = factorize(T, tol)
    G = (rng.standard_normal((T.m, T.m)) + 1j * rng.standard_normal((T.m, T.m))) / 2.0
    H = G + adjoint(G)
    H /= np.linalg.norm(H, 2)
    return from_factors(F.A, F.U @ expm(1j * size * H), F.V, tol)


def generate(kind, m, n, seed, target_norm=0.6, k=None, tol: ToleranceConfig = DEFAULT_TOL) -> GIsometry:
    if kind == "random":
        return random_isometry(seed, m, n, target_norm, tol)
    if kind == "unitary":
        return unitary_isometry(seed, m, n, tol)
    if kind == "normal":
        return normal_isometry(seed, m, n, k=k, target_norm=target_norm, tol=tol)
    if kind == "selfadjoint":
        return normal_isometry(seed, m, n, k=k, target_norm=target_norm, selfadjoint=True, tol=tol)
    raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
