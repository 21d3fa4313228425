# Copyright (c) 2025 ProxSTORM


import json
from pathlib import Path
from typing import Any

import pandas as pd

from src.config.run_config import TraceFormat
from src.driver import TRACE_COLUMNS, Trace


def trace_frame(trace: Trace) -> pd.DataFrame:
    """Trace rows as a frame with the serialized column order; missing truth is NA."""
    return pd.DataFrame(
        [record.as_row() for record in trace], columns=list(TRACE_COLUMNS)
    )


def trace_path(out_dir: str | Path, seed: int, fmt: TraceFormat) -> Path:
    suffix = "jsonl" if TraceFormat(fmt) is TraceFormat.JSONL else "csv"
    return Path(out_dir) / f"trace_seed{seed}.{suffix}"


def write_trace(trace: Trace, path: str | Path, fmt: TraceFormat = TraceFormat.CSV) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = trace_frame(trace)
    if TraceFormat(fmt) is TraceFormat.JSONL:
        frame.to_json(path, orient="records", lines=True, double_precision=15)
    else:
        frame.to_csv(path, index=False)
    return path


def read_trace(path: str | Path) -> pd.DataFrame:
    path = Path(path)
    if path.suffix == ".jsonl":
        return pd.read_json(path, orient="records", lines=True)
    return pd.read_csv(path)


def write_report(report: dict[str, Any], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(report, f, indent=2, ensure_ascii=False, default=_json_default)
    return path


def _json_default(value: Any) -> Any:
    # numpy scalars and arrays
    if hasattr(value, "tolist"):
        return value.tolist()
    if hasattr(value, "value"):
        return value.value
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")
