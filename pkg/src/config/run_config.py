# Copyright (c) 2025 ProxSTORM


import enum
from pathlib import Path
from typing import Any, List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from src.utils.errors import ConfigError, ParameterError

from .configuration import TrustRegionConfig
from .loader import dump_yaml_config, load_yaml_config


class ProblemKind(str, enum.Enum):
    LOGISTIC_L1 = "logistic_l1"
    BOX_BUDGET_QUADRATIC = "box_budget_quadratic"
    SMOOTH_QUADRATIC = "smooth_quadratic"


class TraceFormat(str, enum.Enum):
    CSV = "csv"
    JSONL = "jsonl"


class ProblemSpec(BaseModel):
    """Selects and parameterizes one of the built-in problems."""

    model_config = ConfigDict(extra="forbid")

    kind: ProblemKind = Field(
        ProblemKind.LOGISTIC_L1, description="The problem family to solve"
    )
    dimension: int = Field(20, ge=1, description="Number of optimization variables")
    pool_size: int = Field(
        500, ge=2, description="Finite sample pool size (logistic problem only)"
    )
    holdout_size: Optional[int] = Field(
        None, ge=1, description="Hold-out pool size; defaults to pool_size"
    )
    l1_weight: float = Field(1e-2, ge=0.0, description="Weight λ of the l1 term")
    noise: float = Field(
        0.1, ge=0.0, description="Noise level of the smooth quadratic problem"
    )
    pool_file: Optional[str] = Field(
        None,
        description="CSV pool (columns z_0..z_{d-1}, label) replacing the synthetic logistic pool",
    )
    seed: int = Field(0, description="Seed used to generate the problem instance")
    x0: Optional[List[float]] = Field(
        None, description="Initial iterate; zeros (projected onto dom φ) when omitted"
    )


class RunConfig(BaseModel):
    """A self-describing experiment: problem, algorithm parameters and seeds."""

    model_config = ConfigDict(extra="forbid")

    problem: ProblemSpec = Field(
        default_factory=ProblemSpec, description="The problem to solve"
    )
    algorithm: dict[str, Any] = Field(
        default_factory=dict,
        description="TrustRegionConfig fields; unknown keys are rejected",
    )
    seeds: List[int] = Field(
        default_factory=lambda: [0], min_length=1, description="Run seeds"
    )
    output_dir: str = Field("runs", description="Directory receiving traces and reports")
    trace_format: TraceFormat = Field(TraceFormat.CSV, description="Trace file format")
    epsilons: List[float] = Field(
        default_factory=list, description="Thresholds for the T_eps sweep"
    )

    @field_validator("algorithm")
    @classmethod
    def _check_algorithm(cls, value: dict[str, Any]) -> dict[str, Any]:
        if "seed" in value:
            raise ValueError("algorithm.seed is set per run from 'seeds'")
        try:
            TrustRegionConfig.from_mapping(value, use_env=False)
        except ParameterError as e:
            raise ValueError(str(e)) from e
        return value

    @field_validator("epsilons")
    @classmethod
    def _check_epsilons(cls, value: List[float]) -> List[float]:
        if any(eps < 0 for eps in value):
            raise ValueError("epsilons must be nonnegative")
        return value

    def trust_region_config(self, seed: int) -> TrustRegionConfig:
        try:
            return TrustRegionConfig.from_mapping({**self.algorithm, "seed": seed})
        except ParameterError as e:
            raise ConfigError(str(e)) from e

    def resolved(self) -> dict[str, Any]:
        """The full configuration with every default filled in."""
        data = self.model_dump(mode="json")
        algorithm = TrustRegionConfig.from_mapping(self.algorithm).to_dict()
        algorithm.pop("seed")
        data["algorithm"] = algorithm
        return data

    def write_resolved(self, path: str | Path) -> None:
        dump_yaml_config(self.resolved(), path)


def parse_run_config(data: dict[str, Any]) -> RunConfig:
    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"invalid run configuration:\n{e}") from e


def load_run_config(path: str | Path) -> RunConfig:
    return parse_run_config(load_yaml_config(path))
