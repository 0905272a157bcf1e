import numpy as np
import pytest

from cartanball.classify import classify
from cartanball.errors import SquareDims
from cartanball.generate import (
    KINDS,
    generate,
    normal_isometry,
    perturb,
    random_block_sizes,
    selfadjoint_isometry,
)
from cartanball.group import factorize, verify_relations
from cartanball.spectral import decompose

EXPECTED = {
    "random": (False, False, False),
    "unitary": (True, True, False),
    "normal": (False, True, True),
    "selfadjoint": (False, True, True),
}


@pytest.mark.parametrize("kind", KINDS)
def test_generated_class(kind):
    for seed in range(10):
        T = generate(kind, 4, 3, seed)
        c = classify(T)
        assert (c.is_unitary, c.is_normal, c.is_non_unitary_normal) == EXPECTED[kind]
        assert c.is_self_adjoint == (kind == "selfadjoint")
        assert verify_relations(T.matrix, 4, 3).max_residual <= 1e-9


def test_generate_is_deterministic():
    for kind in KINDS:
        assert np.array_equal(generate(kind, 2, 3, 5).matrix, generate(kind, 2, 3, 5).matrix)


def test_generate_rejects_square_and_unknown():
    with pytest.raises(SquareDims):
        generate("random", 2, 2, 0)
    with pytest.raises(ValueError):
        generate("weird", 3, 2, 0)


def test_block_sizes_prescribed():
    T = normal_isometry(3, 6, 4, block_sizes=[2, 1])
    S = decompose(factorize(T))
    assert sorted(b.k_i for b in S.blocks) == [1, 2]
    with pytest.raises(ValueError):
        normal_isometry(3, 6, 4, k=2, block_sizes=[2, 1])


def test_random_block_sizes_compose_k():
    rng = np.random.default_rng(0)
    for k in range(1, 8):
        sizes = random_block_sizes(rng, k)
        assert sum(sizes) == k and min(sizes) >= 1


def test_target_norm_caps_center():
    T = normal_isometry(1, 5, 3, target_norm=0.3)
    assert np.linalg.norm(factorize(T).A, 2) <= 0.3


def test_selfadjoint_matrix_is_hermitian():
    T = selfadjoint_isometry(2, 3, 5)
    assert np.allclose(T.matrix, T.matrix.conj().T, atol=1e-12)


def test_perturb_stays_in_group():
    T = perturb(normal_isometry(0, 3, 2), seed=1, size=0.1)
    assert verify_relations(T.matrix, 3, 2).is_member
