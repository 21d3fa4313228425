# Copyright (c) 2025 ProxSTORM

from .commands import (
    EXIT_CONFIG,
    EXIT_OK,
    EXIT_RUNTIME,
    EXIT_VERIFY_FAILED,
    cmd_run,
    cmd_sweep,
    cmd_verify,
    seed_summary,
    sweep_table,
)
from .pool import map_seeds, worker_count
from .trace_io import read_trace, trace_frame, write_report, write_trace

__all__ = [
    "EXIT_CONFIG",
    "EXIT_OK",
    "EXIT_RUNTIME",
    "EXIT_VERIFY_FAILED",
    "cmd_run",
    "cmd_sweep",
    "cmd_verify",
    "map_seeds",
    "read_trace",
    "seed_summary",
    "sweep_table",
    "trace_frame",
    "worker_count",
    "write_report",
    "write_trace",
]
