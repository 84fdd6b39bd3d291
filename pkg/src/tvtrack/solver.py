"""The full prediction-correction loop over a time horizon, plus baselines.

``run`` drives any ``AlgorithmChoice``.  The gradient-only baselines are
parameterizations of the same loop and delegate by construction:

* TVGD  -- order-1 prediction only (P = 1): correct the previous solution.
* SPC   -- order-2 prediction with the gate disabled (P = 2, v unbounded).
* GTT   -- a simplified Hessian-based extrapolation baseline with its own
           prediction rule; requires a Hessian oracle.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .core import (UNBOUNDED, Array, History, NonFiniteValueError,
                   SolverConfig, TraceRecord, as_vector)
from .corrector import Corrector, make_gd_corrector
from .predictor import select_order
from .problems import TimeVaryingProblem


@dataclass(frozen=True)
class Sharp:
    config: SolverConfig


@dataclass(frozen=True)
class Tvgd:
    h: float
    alpha: float
    C: int = 1

    def as_config(self) -> SolverConfig:
        return SolverConfig(h=self.h, P=1, v=UNBOUNDED, alpha=self.alpha, C=self.C)


@dataclass(frozen=True)
class Spc:
    h: float
    alpha: float
    C: int = 1

    def as_config(self) -> SolverConfig:
        return SolverConfig(h=self.h, P=2, v=UNBOUNDED, alpha=self.alpha, C=self.C)


@dataclass(frozen=True)
class Gtt:
    h: float
    alpha: float
    C: int = 1


AlgorithmChoice = Union[Sharp, Tvgd, Spc, Gtt]

COMPLETED = "completed"
ABORTED = "aborted"


@dataclass
class RunResult:
    """Trace of one run plus its configuration echo and termination status."""

    records: list[TraceRecord]
    algorithm: AlgorithmChoice
    x0: Array
    rounds_requested: int
    wall_time: float = 0.0
    status: str = COMPLETED
    aborted_round: int | None = None
    abort_reason: str | None = None
    problem_name: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def completed(self) -> bool:
        return self.status == COMPLETED

    def tracking_errors(self) -> list[float | None]:
        return [r.tracking_error for r in self.records]


def _metrics(problem: TimeVaryingProblem, x_hat: Array, t: float) -> tuple[float | None, float | None]:
    tracking = None
    f_gap = None
    if problem.solution is not None:
        tracking = float(np.linalg.norm(x_hat - problem.solution(t)))
    if problem.optimal_value is not None:
        f_gap = float(problem.value(x_hat, t)) - float(problem.optimal_value(t))
    return tracking, f_gap


def run(problem: TimeVaryingProblem, algo: AlgorithmChoice, x0, K: int,
        corrector: Corrector | None = None) -> RunResult:
    """Execute K rounds of the chosen algorithm starting from x0.

    Each round predicts, records the prediction-side metrics, corrects on
    the revealed objective, and pushes the corrected solution into the
    history.  A non-finite prediction, gradient, or corrected solution
    aborts the run; the partial trace is retained and the status records
    the round and reason.  Nothing is ever clamped: the acceptance gate is
    the only stabilization mechanism.
    """
    if K < 1:
        raise ValueError(f"round count K must be >= 1, got {K}")
    if isinstance(algo, Gtt):
        return run_gtt(problem, algo.alpha, algo.C, x0, K, algo.h, _echo=algo)

    config = algo.config if isinstance(algo, Sharp) else algo.as_config()
    x0 = as_vector(x0, dim=problem.dim)
    if corrector is None:
        corrector = make_gd_corrector(config.alpha, config.C)

    history = History(x0, config.P)
    result = RunResult(records=[], algorithm=algo, x0=x0, rounds_requested=K,
                       problem_name=problem.name)
    start = time.perf_counter()
    for k in range(1, K + 1):
        t = k * config.h
        try:
            p, x_hat = select_order(history, config)
            if not np.isfinite(x_hat).all():
                raise NonFiniteValueError("non-finite prediction")
            step_norm = float(np.linalg.norm(x_hat - history.latest))
            grad_norm = float(np.linalg.norm(problem.gradient(x_hat, t)))
            if not math.isfinite(grad_norm):
                raise NonFiniteValueError("non-finite gradient at prediction")
            tracking, f_gap = _metrics(problem, x_hat, t)
            x_corr = corrector(problem, t, x_hat)
            if not np.isfinite(x_corr).all():
                raise NonFiniteValueError("non-finite corrected solution")
        except NonFiniteValueError as err:
            result.status = ABORTED
            result.aborted_round = k
            result.abort_reason = str(err)
            break
        result.records.append(TraceRecord(
            k=k, t=t, p_accepted=p, x_hat=x_hat, x_corrected=x_corr,
            step_norm=step_norm, grad_norm_at_prediction=grad_norm,
            tracking_error=tracking, f_gap=f_gap))
        history.push(x_corr)
    result.wall_time = time.perf_counter() - start
    return result


def run_gtt(problem: TimeVaryingProblem, alpha: float, C: int, x0, K: int,
            h: float, _echo: Gtt | None = None) -> RunResult:
    """Simplified Hessian-based tracking baseline.

    The prediction solves H d = g_t for the drift direction, where
    H = hess f(x_{k-1}; t_{k-1}) and g_t is the forward difference
    (grad f(x_{k-1}; t_k) - grad f(x_{k-1}; t_{k-1})) / h, then steps
    x_hat = x_{k-1} - h H^{-1} g_t.  The finite-difference time step equals
    the sampling period, since the objective is only observable at sampling
    times.  A singular or non-finite Hessian aborts the run; that is a
    documented limitation of the baseline, not of the main algorithm.
    """
    if problem.hessian is None:
        raise ValueError(f"problem {problem.name!r} exposes no Hessian oracle; GTT needs one")
    if K < 1:
        raise ValueError(f"round count K must be >= 1, got {K}")
    x0 = as_vector(x0, dim=problem.dim)
    algo = _echo if _echo is not None else Gtt(h=h, alpha=alpha, C=C)
    corrector = make_gd_corrector(alpha, C)
    result = RunResult(records=[], algorithm=algo, x0=x0, rounds_requested=K,
                       problem_name=problem.name)
    start = time.perf_counter()
    prev = x0
    for k in range(1, K + 1):
        t = k * h
        t_prev = (k - 1) * h
        try:
            hess = np.asarray(problem.hessian(prev, t_prev), dtype=np.float64)
            if not np.isfinite(hess).all():
                raise NonFiniteValueError("non-finite Hessian")
            g_t = (np.asarray(problem.gradient(prev, t)) -
                   np.asarray(problem.gradient(prev, t_prev))) / h
            try:
                drift = np.linalg.solve(hess, g_t)
            except np.linalg.LinAlgError as exc:
                raise NonFiniteValueError(f"singular Hessian: {exc}") from exc
            if not np.isfinite(drift).all():
                raise NonFiniteValueError("singular Hessian: non-finite solve result")
            x_hat = prev - h * drift
            step_norm = float(np.linalg.norm(x_hat - prev))
            grad_norm = float(np.linalg.norm(problem.gradient(x_hat, t)))
            if not math.isfinite(grad_norm):
                raise NonFiniteValueError("non-finite gradient at prediction")
            tracking, f_gap = _metrics(problem, x_hat, t)
            x_corr = corrector(problem, t, x_hat)
            if not np.isfinite(x_corr).all():
                raise NonFiniteValueError("non-finite corrected solution")
        except NonFiniteValueError as err:
            result.status = ABORTED
            result.aborted_round = k
            result.abort_reason = str(err)
            break
        result.records.append(TraceRecord(
            k=k, t=t, p_accepted=1, x_hat=x_hat, x_corrected=x_corr,
            step_norm=step_norm, grad_norm_at_prediction=grad_norm,
            tracking_error=tracking, f_gap=f_gap))
        prev = x_corr
    result.wall_time = time.perf_counter() - start
    return result
