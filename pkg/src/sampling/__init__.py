# Copyright (c) 2025 ProxSTORM

from .dynamic import (
    SamplingState,
    dynamic_sample_size,
    empirical_gradient_variance,
    initial_state,
    required_samples,
)

__all__ = [
    "SamplingState",
    "dynamic_sample_size",
    "empirical_gradient_variance",
    "initial_state",
    "required_samples",
]
