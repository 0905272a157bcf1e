"""Isometries of the unit ball of m x n complex matrices.

The holomorphic automorphisms of the ball are represented by the group of
operators on ``C^m (+) C^n`` preserving ``<h1,h2> - <k1,k2>``; this package
builds those operators, classifies them and finds their eigenvector-based
fixed points.
"""

from .ball import (
    CausalType,
    Contraction,
    MobiusMap,
    SpaceVector,
    caratheodory_distance,
    classify_vector,
    hermitian_form,
    intertwine_residual,
    mobius_apply,
    mobius_inverse,
    mobius_map,
)
from .classify import (
    BlockView,
    Classification,
    block_decompose,
    classify,
    is_non_unitary_normal,
    is_normal,
    is_self_adjoint,
    is_unitary_isometry,
    s_block_eigen,
    spectrum_normal,
)
from .errors import CartanError
from .fixed_points import (
    Conclusion,
    DetectionReport,
    GenericFixedPoint,
    common_eigen_fixed_points,
    detect_generic,
    enumerate_generic,
    fixed_from_eigenvectors,
    verify_fixed,
)
from .generate import generate, normal_isometry, perturb, random_isometry, unitary_isometry
from .group import (
    FactoredIsometry,
    GIsometry,
    act,
    compose,
    factorize,
    from_factors,
    identity,
    inverse,
    is_center,
    verify_relations,
)
from .linalg import (
    DEFAULT_TOL,
    ToleranceConfig,
    adjoint,
    cluster_eigenvalues,
    hermitian_eig,
    operator_norm,
    positive_inv_sqrt,
    positive_sqrt,
    random_contraction,
    random_unitary,
)
from .spectral import SpectralBlock, SpectralDecomposition, decompose, rank_of_C, verify_decomposition

__version__ = "0.1.0"
