import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from cartanball import from_factors

settings.register_profile(
    "repo",
    deadline=None,
    max_examples=40,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

# The 3x3 worked example: m=2, n=1, A = [0.6; 0], U = I, V = 1.
EXAMPLE_A = np.array([[0.6], [0.0]])
EXAMPLE_MATRIX = np.array([[1.25, 0, 0.75], [0, 1, 0], [0.75, 0, 1.25]])


@pytest.fixture
def example():
    return from_factors(EXAMPLE_A, np.eye(2), np.eye(1))


@pytest.fixture
def example_flipped():
    """Same center with V = -1: in the group but not normal."""
    return from_factors(EXAMPLE_A, np.eye(2), -np.eye(1))
