# Copyright (c) 2025 ProxSTORM


import enum

import numpy as np


class Stream(enum.IntEnum):
    """Independent random streams derived from one run seed."""

    MODEL = 1
    CRED = 2
    DYNAMIC = 3
    POWER_ITERATION = 4


def stream_rng(seed: int, stream: Stream, k: int = 0) -> np.random.Generator:
    """Generator for iteration `k` of `stream`; identical inputs give identical draws."""
    return np.random.default_rng(
        np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF, int(stream), int(k)])
    )


def derive_seed(seed: int, stream: Stream, k: int = 0) -> int:
    """A 64-bit integer seed for `stream` at iteration `k`."""
    state = np.random.SeedSequence(
        [int(seed) & 0xFFFFFFFFFFFFFFFF, int(stream), int(k)]
    ).generate_state(2, dtype=np.uint32)
    return int(state[0]) << 32 | int(state[1])
