# Copyright (c) 2025 ProxSTORM


from pathlib import Path

import numpy as np
import pandas as pd

from src.utils.errors import ParameterError

from .logistic import DEFAULT_L1_WEIGHT, LogisticL1Problem

LABEL_COLUMN = "label"


def export_pool_csv(problem: LogisticL1Problem, path: str | Path) -> None:
    """Write the sample pool, one row per sample: z_0..z_{d-1}, label."""
    frame = pd.DataFrame(
        problem.features, columns=[f"z_{i}" for i in range(problem.dimension)]
    )
    frame[LABEL_COLUMN] = problem.labels
    frame.to_csv(path, index=False, float_format="%.17g")


def import_pool_csv(
    path: str | Path, l1_weight: float = DEFAULT_L1_WEIGHT
) -> LogisticL1Problem:
    frame = pd.read_csv(path)
    if LABEL_COLUMN not in frame.columns:
        raise ParameterError(f"pool file {path} has no '{LABEL_COLUMN}' column")
    features = frame.drop(columns=[LABEL_COLUMN]).to_numpy(dtype=float)
    labels = frame[LABEL_COLUMN].to_numpy(dtype=float)
    if not np.all((labels == 0.0) | (labels == 1.0)):
        raise ParameterError(f"pool file {path} has labels outside {{0, 1}}")
    return LogisticL1Problem(features, labels, l1_weight=l1_weight)
