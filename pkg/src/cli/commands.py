# Copyright (c) 2025 ProxSTORM


import hashlib
import json
from dataclasses import replace
from pathlib import Path
from typing import Any, Iterable, Optional

import numpy as np
import pandas as pd

from src.config import ProblemSpec, RunConfig, SamplingMode, load_run_config
from src.config.configuration import TrustRegionConfig
from src.diagnostics import (
    assumption_rates,
    lyapunov_violations,
    summability_report,
    theory_constants,
)
from src.driver import Trace, check_sampling_mode, run
from src.problems import StochasticProblem, build_problem
from src.prox import ProxKind
from src.utils.errors import (
    ConfigError,
    DiagnosticError,
    ParameterError,
    ProxStormError,
    RunAborted,
)
from src.utils.logger import get_logger
from src.verify import SUITES, run_suites

from .pool import map_seeds
from .trace_io import trace_path, write_report, write_trace

logger = get_logger("cli")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_RUNTIME = 3


def _prepare(
    config_path: str | Path,
    out_dir: Optional[str | Path],
    n_seeds: Optional[int],
) -> tuple[RunConfig, StochasticProblem, Path]:
    run_config = load_run_config(config_path)
    updates: dict[str, Any] = {}
    if n_seeds is not None:
        if n_seeds < 1:
            raise ConfigError(f"--seeds must be >= 1, got {n_seeds}")
        updates["seeds"] = list(range(n_seeds))
    if out_dir is not None:
        updates["output_dir"] = str(out_dir)
    if updates:
        run_config = run_config.model_copy(update=updates)
    try:
        problem = build_problem(run_config.problem)
    except (ParameterError, OSError) as e:
        raise ConfigError(str(e)) from e
    # Surface inequality violations and mode mismatches before any run starts.
    try:
        config = run_config.trust_region_config(run_config.seeds[0])
        check_sampling_mode(problem, config)
    except ParameterError as e:
        raise ConfigError(str(e)) from e
    return run_config, problem, Path(run_config.output_dir)


def _x0(spec: ProblemSpec) -> Optional[np.ndarray]:
    return None if spec.x0 is None else np.asarray(spec.x0, dtype=float)


def _is_deterministic(problem: StochasticProblem, config: TrustRegionConfig) -> bool:
    return config.sampling_mode is SamplingMode.FULL_POOL and problem.deterministic


def seed_summary(
    problem: StochasticProblem,
    config: TrustRegionConfig,
    trace: Trace,
    epsilons: Iterable[float] = (),
) -> dict[str, Any]:
    """Per-seed report entry: trace summary plus rates and summability when truth exists."""
    summary: dict[str, Any] = {"seed": config.seed, **trace.summary()}
    holdout = getattr(problem, "holdout_loss", None)
    if holdout is not None:
        summary["holdout_loss"] = holdout(trace.x_final)
    if not trace.has_truth:
        return summary
    constants = None
    if problem.lipschitz_L is not None:
        constants = theory_constants(
            config, problem.lipschitz_L, deterministic=_is_deterministic(problem, config)
        )
    try:
        rates = assumption_rates(
            trace.records, constants, smooth=problem.phi.kind is ProxKind.ZERO
        )
        summary["assumption_rates"] = rates.to_dict()
    except DiagnosticError as e:
        summary["assumption_rates"] = {"error": str(e)}
    summary["summability"] = {
        str(eps): summability_report(trace.records, eps).to_dict() for eps in epsilons
    }
    if constants is not None and _is_deterministic(problem, config):
        summary["lyapunov_violations"] = len(
            lyapunov_violations(
                trace.records, trace.next_deltas(), config.nu, constants.theta_lower
            )
        )
    return summary


def _execute(
    problem: StochasticProblem,
    run_config: RunConfig,
    out_dir: Path,
    seed: int,
    epsilon_stop: Optional[float] = None,
    write: bool = True,
) -> tuple[TrustRegionConfig, Trace]:
    config = run_config.trust_region_config(seed)
    if epsilon_stop is not None:
        config = replace(config, epsilon_stop=epsilon_stop)
    path = trace_path(out_dir, seed, run_config.trace_format)
    try:
        trace = run(problem, config, x0=_x0(run_config.problem))
    except RunAborted as e:
        if write:
            write_trace(e.trace, path, run_config.trace_format)
            logger.error("Partial trace flushed", seed=seed, path=str(path))
        raise
    if write:
        write_trace(trace, path, run_config.trace_format)
    return config, trace


def _config_hash(run_config: RunConfig) -> str:
    text = json.dumps(run_config.resolved(), sort_keys=True)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def cmd_run(
    config_path: str | Path,
    out_dir: Optional[str | Path] = None,
    n_seeds: Optional[int] = None,
) -> int:
    """One run per seed; per-seed traces, resolved_config.yaml and report.json."""
    try:
        run_config, problem, out = _prepare(config_path, out_dir, n_seeds)
        out.mkdir(parents=True, exist_ok=True)
        run_config.write_resolved(out / "resolved_config.yaml")
    except (ConfigError, ParameterError) as e:
        logger.error("Invalid configuration", error=str(e))
        print(f"❌ configuration error: {e}")
        return EXIT_CONFIG

    logger.info(
        "Starting runs", problem=problem.name, seeds=len(run_config.seeds), out=str(out)
    )

    def one(seed: int) -> dict[str, Any]:
        config, trace = _execute(problem, run_config, out, seed)
        return seed_summary(problem, config, trace, run_config.epsilons)

    try:
        summaries = map_seeds(one, run_config.seeds)
    except ProxStormError as e:
        logger.error("Run failed", error=str(e))
        print(f"❌ run failed: {e}")
        return EXIT_RUNTIME

    config0 = run_config.trust_region_config(run_config.seeds[0])
    report: dict[str, Any] = {
        "config_hash": _config_hash(run_config),
        "problem": problem.describe(),
        "seeds": summaries,
    }
    if problem.lipschitz_L is not None:
        constants = theory_constants(
            config0, problem.lipschitz_L, deterministic=_is_deterministic(problem, config0)
        )
        smooth = problem.phi.kind is ProxKind.ZERO
        beta_values = [
            s["assumption_rates"]["beta_hat"]
            for s in summaries
            if "beta_hat" in s.get("assumption_rates", {})
        ]
        beta = float(np.median(beta_values)) if beta_values else 1.0
        report["theory"] = {**constants.to_dict(), "ledger": constants.ledger(beta, smooth)}
    write_report(report, out / "report.json")
    print(f"✅ {len(summaries)} run(s) written to {out}")
    return EXIT_OK


def sweep_table(t_eps: dict[float, list[Optional[int]]], max_iters: int) -> pd.DataFrame:
    """
    Median and IQR of T_ε per ε. Censored runs (threshold never reached)
    enter the statistics at max_iters, a lower bound.
    """
    rows = []
    for eps, values in t_eps.items():
        observed = pd.Series(
            [max_iters if v is None else v for v in values], dtype=float
        )
        rows.append(
            {
                "epsilon": eps,
                "median_t_eps": float(observed.median()),
                "iqr": float(observed.quantile(0.75) - observed.quantile(0.25)),
                "censored": sum(v is None for v in values),
                "runs": len(values),
            }
        )
    return pd.DataFrame(rows, columns=["epsilon", "median_t_eps", "iqr", "censored", "runs"])


def cmd_sweep(
    config_path: str | Path,
    epsilons: Optional[list[float]] = None,
    out_dir: Optional[str | Path] = None,
    n_seeds: Optional[int] = None,
) -> int:
    """T_ε for every (ε, seed); writes sweep.csv with median and IQR per ε."""
    try:
        run_config, problem, out = _prepare(config_path, out_dir, n_seeds)
        epsilons = list(epsilons if epsilons else run_config.epsilons)
        if not epsilons or any(not eps > 0 for eps in epsilons):
            raise ConfigError("sweep needs a nonempty list of positive epsilons")
        if not problem.has_truth:
            raise ConfigError(f"{problem.name} has no true oracle; T_eps is undefined")
        out.mkdir(parents=True, exist_ok=True)
        run_config.write_resolved(out / "resolved_config.yaml")
    except (ConfigError, ParameterError) as e:
        logger.error("Invalid configuration", error=str(e))
        print(f"❌ configuration error: {e}")
        return EXIT_CONFIG

    t_eps: dict[float, list[Optional[int]]] = {}
    try:
        for eps in sorted(epsilons, reverse=True):
            eps_dir = out / f"eps_{eps:g}"
            t_eps[eps] = map_seeds(
                lambda seed: _execute(problem, run_config, eps_dir, seed, epsilon_stop=eps)[
                    1
                ].t_eps,
                run_config.seeds,
            )
            logger.info("Sweep point finished", epsilon=eps, t_eps=t_eps[eps])
    except ProxStormError as e:
        logger.error("Sweep failed", error=str(e))
        print(f"❌ sweep failed: {e}")
        return EXIT_RUNTIME

    max_iters = run_config.trust_region_config(run_config.seeds[0]).max_iters
    table = sweep_table(t_eps, max_iters)
    table.to_csv(out / "sweep.csv", index=False)
    print(table.to_string(index=False))
    return EXIT_OK


def cmd_verify(suite: Optional[str] = None, seed: int = 0) -> int:
    """Run the property suites (or one of them); exit 1 on the first failing suite."""
    if suite is not None and suite not in SUITES:
        print(f"❌ unknown suite {suite!r}; choose from {', '.join(SUITES)}")
        return EXIT_CONFIG
    names = [suite] if suite else list(SUITES)
    results = run_suites(names, seed=seed)
    failed = False
    for result in results:
        if result.passed:
            print(f"✅ {result.name}: {result.cases} cases passed")
        else:
            failed = True
            print(f"❌ {result.name}: failed")
            for key, value in result.failure.items():
                print(f"    {key} = {value}")
    return EXIT_VERIFY_FAILED if failed else EXIT_OK
