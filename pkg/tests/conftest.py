# Copyright (c) 2025 ProxSTORM


import os

import numpy as np
import pytest

from src.config import SamplingMode, TrustRegionConfig
from src.problems import logistic_l1_problem, smooth_quadratic


@pytest.fixture(autouse=True)
def _clean_environment(monkeypatch):
    """Keep PROXSTORM_* overrides from the developer shell out of the tests."""
    for name in list(os.environ):
        if name.startswith("PROXSTORM_"):
            monkeypatch.delenv(name, raising=False)


@pytest.fixture
def rng():
    return np.random.default_rng(20250101)


@pytest.fixture
def deterministic_quadratic():
    """φ ≡ 0, noise-free quadratic; its full pool is a single exact sample."""
    return smooth_quadratic(5, noise=0.0, seed=3)


@pytest.fixture
def deterministic_config():
    """Exact models and reductions; η₂ = 1 keeps every accepted step large enough
    for the pointwise Lyapunov decrease."""
    return TrustRegionConfig(
        eta2=1.0,
        gamma=2.0,
        kappa_bmh=100.0,
        sampling_mode=SamplingMode.FULL_POOL,
        max_iters=100,
    )


@pytest.fixture
def small_logistic():
    return logistic_l1_problem(8, 100, seed=1)
