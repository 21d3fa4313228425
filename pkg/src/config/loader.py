# Copyright (c) 2025 ProxSTORM


import os
from pathlib import Path
from typing import Any, Dict

import yaml

from src.utils.errors import ConfigError


def replace_env_vars(value: str) -> str:
    """Replace environment variables in string values."""
    if not isinstance(value, str):
        return value
    if value.startswith("$"):
        env_var = value[1:]
        return os.getenv(env_var, env_var)
    return value


def process_dict(config: Dict[str, Any]) -> Dict[str, Any]:
    """Recursively process dictionary to replace environment variables."""
    if not config:
        return {}
    result = {}
    for key, value in config.items():
        if isinstance(value, dict):
            result[key] = process_dict(value)
        elif isinstance(value, str):
            result[key] = replace_env_vars(value)
        else:
            result[key] = value
    return result


def load_yaml_config(file_path: str | Path) -> Dict[str, Any]:
    """Load and process YAML configuration file."""
    path = Path(file_path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            config = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError(f"invalid YAML in {path}: {e}") from e
    if config is not None and not isinstance(config, dict):
        raise ConfigError(f"top level of {path} must be a mapping")
    return process_dict(config)


def dump_yaml_config(config: Dict[str, Any], file_path: str | Path) -> None:
    """Write a configuration mapping as YAML, preserving key order."""
    with open(file_path, "w", encoding="utf-8") as f:
        yaml.safe_dump(config, f, sort_keys=False)
