"""Extrapolation of past solutions and the acceptance gate that selects the
prediction order."""

from __future__ import annotations

import math

import numpy as np

from .core import Array, History, SolverConfig, binomial


def predict(history: History, p: int) -> Array:
    """Order-p extrapolation of the stored solutions.

    Computes sum_{i=1}^{p} (-1)^(i-1) C(p, i) x_{k-i} with exact integer
    binomial weights; this is the value at the next grid point of the
    degree-(p-1) polynomial interpolating the last p solutions.  For p = 1
    it returns the previous solution unchanged.
    """
    if not 1 <= p <= len(history):
        raise ValueError(f"prediction order p must be in [1, {len(history)}], got {p}")
    if p == 1:
        return history[0].copy()
    acc = float(binomial(p, 1)) * history[0]
    for i in range(2, p + 1):
        acc += float((-1) ** (i - 1) * binomial(p, i)) * history[i - 1]
    return acc


def select_order(history: History, config: SolverConfig) -> tuple[int, Array]:
    """Pick the highest order whose implied step passes the velocity gate.

    Orders are tried from P down to 1; the first p with
    ||x_hat^p - x_{k-1}|| <= v h (non-strict) wins.  The loop always
    terminates with p >= 1 because the order-1 step is exactly zero.  With
    the gate disabled (v unbounded) the check is skipped entirely and the
    order-P prediction is returned.
    """
    if config.gate_disabled:
        return config.P, predict(history, config.P)
    threshold = config.v * config.h
    prev = history.latest
    for p in range(config.P, 0, -1):
        x_hat = predict(history, p)
        if float(np.linalg.norm(x_hat - prev)) <= threshold:
            return p, x_hat
    raise AssertionError("unreachable: order-1 prediction always passes the gate")


def lagrange_residual_bound(p: int, h: float, sigma_p: float) -> float:
    """Worst-case extrapolation residual sigma_p * h^p.

    Valid whenever the target trajectory is p-times differentiable with
    p-th derivative norm bounded by sigma_p on the sampling window.
    """
    if p < 1:
        raise ValueError(f"order p must be >= 1, got {p}")
    if not (h > 0):
        raise ValueError(f"sampling period h must be > 0, got {h}")
    if sigma_p < 0 or math.isnan(sigma_p):
        raise ValueError(f"derivative bound sigma_p must be >= 0, got {sigma_p}")
    return sigma_p * h**p
