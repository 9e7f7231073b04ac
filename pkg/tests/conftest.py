import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import supcenter as sc

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def worked():
    """The hand-checked reference instance: R = 1/2, centers (1/2, 1/2, s)."""
    mu = sc.Functional(support=(0, 1), weights=(0.5, -0.5))
    y = sc.Subspace(dim=3, functionals=(mu,))
    family = sc.FunctionFamily([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    return family, y, sc.ball_problem(family, y)
