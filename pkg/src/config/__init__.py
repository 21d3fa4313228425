# Copyright (c) 2025 ProxSTORM


from dotenv import load_dotenv

from .configuration import (
    CredMode,
    SamplingMode,
    TrustRegionConfig,
    nu_ratio_lower_bound,
)
from .loader import dump_yaml_config, load_yaml_config
from .run_config import (
    ProblemKind,
    ProblemSpec,
    RunConfig,
    TraceFormat,
    load_run_config,
    parse_run_config,
)

# Load environment variables
load_dotenv()

__all__ = [
    "CredMode",
    "ProblemKind",
    "ProblemSpec",
    "RunConfig",
    "SamplingMode",
    "TraceFormat",
    "TrustRegionConfig",
    "dump_yaml_config",
    "load_run_config",
    "load_yaml_config",
    "nu_ratio_lower_bound",
    "parse_run_config",
]
