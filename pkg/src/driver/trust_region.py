# Copyright (c) 2025 ProxSTORM


import time
from typing import Callable, Optional

import numpy as np

from src.config.configuration import CredMode, SamplingMode, TrustRegionConfig
from src.diagnostics import SummabilityAccumulator, event_indicators, lyapunov
from src.models import build_model
from src.problems.base import StochasticProblem, sampled_reduction
from src.prox import ProxFunction, prox_gradient
from src.sampling import dynamic_sample_size, initial_state
from src.subproblem import compute_trial_step
from src.utils.errors import (
    CauchyFailureError,
    FcdViolationError,
    ParameterError,
    ProxStormError,
    RunAborted,
    SampleError,
)
from src.utils.logger import get_logger, perf_logger
from src.utils.rng import Stream, stream_rng

from .types import FailureFlag, IterationRecord, Trace

logger = get_logger("driver")

RecordSink = Callable[[IterationRecord], None]


def computed_reduction(
    problem: StochasticProblem,
    x: np.ndarray,
    s: np.ndarray,
    phi: ProxFunction,
    n: int,
    seed: int,
    mode: CredMode = CredMode.SHARED,
    samples: Optional[np.ndarray] = None,
    k: int = 0,
) -> float:
    """
    cred = (1/n) Σ [F(x, ξ_ℓ) − F(x+s, ξ_ℓ)] + φ(x) − φ(x+s).

    In shared mode ξ_ℓ are `samples` (the model's); in independent mode n
    fresh samples come from the (seed, k) reduction stream. φ is exact.
    """
    mode = CredMode(mode)
    if mode is CredMode.SHARED:
        if samples is None:
            raise ParameterError("shared computed reduction needs the model's samples")
    else:
        if n < 1:
            raise ParameterError(f"computed reduction needs n >= 1, got {n}")
        samples = problem.draw_samples(stream_rng(seed, Stream.CRED, k), n)
    return sampled_reduction(problem, x, x + s, samples) + phi.decrement(x, s)


def _ratio_test(
    cred: Optional[float],
    pred: Optional[float],
    h_norm: float,
    delta: float,
    config: TrustRegionConfig,
) -> bool:
    if pred is None or cred is None or not pred > 0.0:
        return False
    return h_norm >= config.eta2 * delta and cred / pred >= config.eta1


def accept_and_update(
    cred: Optional[float],
    pred: Optional[float],
    h_norm: float,
    delta: float,
    config: TrustRegionConfig,
) -> tuple[bool, float]:
    """Acceptance test and radius update: expand to min{γδ, δ_max} or shrink to δ/γ."""
    accepted = _ratio_test(cred, pred, h_norm, delta, config)
    if accepted:
        return True, min(config.gamma * delta, config.delta_max)
    return False, delta / config.gamma


def accept_and_update_exponent(
    cred: Optional[float],
    pred: Optional[float],
    h_norm: float,
    exponent: int,
    config: TrustRegionConfig,
) -> tuple[bool, int]:
    """accept_and_update on the radius exponent j, δ = δ₀·γ^j."""
    accepted = _ratio_test(cred, pred, h_norm, config.delta_at(exponent), config)
    if accepted:
        return True, min(exponent + 1, config.ell)
    return False, exponent - 1


def check_sampling_mode(problem: StochasticProblem, config: TrustRegionConfig) -> None:
    if config.sampling_mode is SamplingMode.FULL_POOL and not problem.deterministic:
        raise ParameterError(
            f"sampling_mode=full_pool needs a finite pool; {problem.name} is stochastic"
        )


def run(
    problem: StochasticProblem,
    config: TrustRegionConfig,
    x0: Optional[np.ndarray] = None,
    sink: Optional[RecordSink] = None,
) -> Trace:
    """
    Run the stochastic proximal trust-region loop from x0 (default 0).

    Every record is passed to `sink` as soon as it is complete. The run ends
    early at epsilon_stop or when δ_k drops below delta_min. Any package error
    raised inside the loop aborts with RunAborted carrying the partial trace.
    """
    check_sampling_mode(problem, config)
    phi = problem.phi
    seed = config.seed
    x, projected = problem.initial_point(x0)
    if projected:
        logger.warning("Initial point projected onto dom phi", problem=problem.name)
    trace = Trace(x0=x.copy(), x_final=x, kappa_fcd=config.kappa_fcd, projected_x0=projected)
    summability = SummabilityAccumulator(
        config.epsilon_stop if config.epsilon_stop > 0 else np.inf
    )
    exponent = 0
    cauchy_r: Optional[float] = None
    saa_samples: Optional[np.ndarray] = None

    logger.info(
        "Run started",
        problem=problem.name,
        seed=seed,
        max_iters=config.max_iters,
        sampling_mode=config.sampling_mode.value,
        cred_mode=config.cred_mode.value,
    )
    start = time.perf_counter()
    try:
        for k in range(config.max_iters):
            delta = config.delta_at(exponent)
            if delta < config.delta_min:
                trace.stop_reason = "radius_floor"
                logger.info("Radius fell below delta_min", k=k, delta=delta)
                break

            h_true_norm = f_plus_phi = psi = true_grad = None
            if problem.has_truth:
                f_true, true_grad = problem.true_oracle(x)
                h_true_norm = float(
                    np.linalg.norm(prox_gradient(x, true_grad, config.r, phi))
                )
                f_plus_phi = f_true + phi.value(x)
                psi = lyapunov(f_plus_phi, delta, config.nu)
                if 0.0 < config.epsilon_stop and h_true_norm <= config.epsilon_stop:
                    trace.t_eps = k
                    trace.stop_reason = "epsilon_stop"
                    break

            samples = None
            cap_hit = False
            mode = config.sampling_mode
            if mode is SamplingMode.FULL_POOL:
                samples = problem.full_pool()
            elif mode is SamplingMode.SAA:
                if saa_samples is None:
                    saa_samples = problem.draw_samples(
                        stream_rng(seed, Stream.MODEL, 0), config.n_samples_model
                    )
                samples = saa_samples
            elif mode is SamplingMode.DYNAMIC:
                state = dynamic_sample_size(
                    problem,
                    x,
                    delta,
                    initial_state(
                        problem,
                        config.n_samples_model,
                        seed,
                        k,
                        n_max=config.n_max,
                        alpha=config.alpha,
                        kappa_grad=config.kappa_grad,
                    ),
                    seed,
                    k,
                )
                samples = state.drawn_samples
                cap_hit = state.cap_hit

            model = build_model(
                problem,
                x,
                config.n_samples_model,
                seed,
                k,
                samples=samples,
                kappa_bmh=config.kappa_bmh,
                delta=delta,
            )
            h_model_norm = float(
                np.linalg.norm(prox_gradient(x, model.g, config.r, phi))
            )

            common = dict(
                k=k,
                delta_exponent=exponent,
                delta=delta,
                h_model_norm=h_model_norm,
                h_true_norm=h_true_norm,
                n_model=model.n_samples,
                b_k=model.b,
                f_plus_phi=f_plus_phi,
                psi=psi,
                cap_hit=cap_hit,
            )
            i_k = None
            if true_grad is not None:
                i_k, _ = event_indicators(
                    true_grad, model.g, delta, config.kappa_grad, None, None, None, config.eta
                )

            if h_model_norm < config.eta2 * delta:
                record = IterationRecord(
                    **common,
                    pred=None,
                    cred=None,
                    ared=None,
                    accepted=False,
                    gated=True,
                    n_cred=0,
                    cauchy_r=None,
                    I_k=i_k,
                    J_k=True if i_k is not None else None,
                )
                exponent -= 1
            else:
                r_init = cauchy_r if cauchy_r is not None else 1.0 / (1.0 + model.b)
                try:
                    step = compute_trial_step(
                        model,
                        phi,
                        x,
                        delta,
                        h_model_norm,
                        r_init,
                        kappa_fcd=config.kappa_fcd,
                        spg_max_iters=config.spg_max_iters,
                    )
                except (CauchyFailureError, FcdViolationError) as error:
                    if isinstance(error, CauchyFailureError):
                        failure, pred = FailureFlag.CAUCHY, None
                    else:
                        pred = error.pred
                        failure = (
                            FailureFlag.ZERO_PRED if not pred > 0.0 else FailureFlag.FCD
                        )
                    logger.warning(
                        "Trial step rejected", k=k, failure=failure, error=str(error)
                    )
                    record = IterationRecord(
                        **common,
                        pred=pred,
                        cred=None,
                        ared=None,
                        accepted=False,
                        gated=False,
                        n_cred=0,
                        cauchy_r=None,
                        I_k=i_k,
                        J_k=True if i_k is not None else None,
                        failure=failure,
                    )
                    exponent -= 1
                else:
                    cauchy_r = step.cauchy_r
                    x_trial = x + step.s
                    if mode is SamplingMode.FULL_POOL or config.cred_mode is CredMode.SHARED:
                        cred_mode, n_cred = CredMode.SHARED, model.n_samples
                    else:
                        cred_mode, n_cred = CredMode.INDEPENDENT, config.n_samples_cred
                    cred = computed_reduction(
                        problem,
                        x,
                        step.s,
                        phi,
                        n_cred,
                        seed,
                        cred_mode,
                        samples=model.samples,
                        k=k,
                    )
                    ared = j_k = None
                    if problem.has_truth:
                        ared = problem.true_reduction(x, x_trial) + phi.decrement(
                            x, step.s
                        )
                        _, j_k = event_indicators(
                            true_grad,
                            model.g,
                            delta,
                            config.kappa_grad,
                            ared,
                            cred,
                            step.pred,
                            config.eta,
                        )
                    accepted, exponent = accept_and_update_exponent(
                        cred, step.pred, h_model_norm, exponent, config
                    )
                    record = IterationRecord(
                        **common,
                        pred=step.pred,
                        cred=cred,
                        ared=ared,
                        accepted=accepted,
                        gated=False,
                        n_cred=n_cred,
                        cauchy_r=step.cauchy_r,
                        I_k=i_k,
                        J_k=j_k,
                        refine_iters=step.refine_iters,
                        fcd_ratio=step.fcd_ratio,
                    )
                    if accepted:
                        x = x_trial

            trace.append(record)
            summability.update(k, delta, h_true_norm)
            if sink is not None:
                sink(record)
            logger.debug(
                "Iteration",
                k=k,
                delta=delta,
                pred=record.pred,
                cred=record.cred,
                accepted=record.accepted,
                gated=record.gated,
            )
    except ProxStormError as error:
        trace.x_final = x
        trace.final_delta = config.delta_at(exponent)
        trace.stop_reason = "sample_error" if isinstance(error, SampleError) else "error"
        trace.delta_sq_partial_sums = summability.partial_sums
        _log_finish(problem, config, trace, start, success=False)
        raise RunAborted(f"run aborted at iteration {len(trace)}: {error}", trace) from error

    trace.final_delta = config.delta_at(exponent)
    trace.x_final = x
    trace.delta_sq_partial_sums = summability.partial_sums
    if problem.has_truth:
        final_value, final_grad = problem.true_oracle(x)
        trace.final_objective = final_value + phi.value(x)
        trace.final_h_true_norm = float(
            np.linalg.norm(prox_gradient(x, final_grad, config.r, phi))
        )
        if (
            trace.t_eps is None
            and 0.0 < config.epsilon_stop
            and trace.final_h_true_norm <= config.epsilon_stop
        ):
            trace.t_eps = len(trace)
            trace.stop_reason = "epsilon_stop"
    _log_finish(problem, config, trace, start, success=True)
    return trace


def _log_finish(
    problem: StochasticProblem,
    config: TrustRegionConfig,
    trace: Trace,
    start: float,
    success: bool,
) -> None:
    duration_ms = int((time.perf_counter() - start) * 1000)
    logger.info(
        "Run finished",
        problem=problem.name,
        seed=config.seed,
        iterations=len(trace),
        stop_reason=trace.stop_reason,
        final_h_true_norm=trace.final_h_true_norm,
    )
    perf_logger.log_run(
        problem=problem.name,
        seed=config.seed,
        iterations=len(trace),
        duration_ms=duration_ms,
        acceptance_rate=trace.acceptance_rate,
        success=success,
        stop_reason=trace.stop_reason,
    )
