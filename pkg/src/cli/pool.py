# Copyright (c) 2025 ProxSTORM


import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Optional, TypeVar

from src.utils.logger import get_logger

logger = get_logger("cli")

THREADS_ENV = "PROXSTORM_THREADS"

T = TypeVar("T")


def worker_count(jobs: int, env: Optional[dict] = None) -> int:
    """Workers for `jobs` independent runs, capped by PROXSTORM_THREADS."""
    env = os.environ if env is None else env
    cap = os.cpu_count() or 1
    raw = env.get(THREADS_ENV)
    if raw:
        try:
            cap = max(1, int(raw))
        except ValueError:
            logger.warning("Ignoring invalid thread cap", value=raw)
    return max(1, min(cap, jobs))


def map_seeds(fn: Callable[[int], T], seeds: Iterable[int]) -> list[T]:
    """fn(seed) for every seed on a thread pool; results keep the seed order."""
    seeds = list(seeds)
    workers = worker_count(len(seeds))
    logger.debug("Dispatching runs", seeds=len(seeds), workers=workers)
    if workers == 1:
        return [fn(seed) for seed in seeds]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(fn, seed) for seed in seeds]
        return [future.result() for future in futures]
