"""Shared domain types: solver configuration, solution history, trace records,
and exact binomial arithmetic used by the prediction step."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

Array = np.ndarray

#: Sentinel for a disabled velocity gate.  The acceptance check is skipped
#: entirely for this value; it never participates in ``v * h`` arithmetic.
UNBOUNDED = math.inf

#: Largest supported prediction order.  C(30, 15) = 155117520 fits comfortably
#: in 64-bit integers (and in the 53-bit float mantissa), so prediction weights
#: convert to float without rounding.
MAX_ORDER = 30


class NonFiniteValueError(RuntimeError):
    """A vector or oracle value contained NaN or infinity."""

    def __init__(self, message: str, *, iteration: int | None = None,
                 components: tuple[int, ...] = ()):
        super().__init__(message)
        self.iteration = iteration
        self.components = components


def as_vector(values, dim: int | None = None) -> Array:
    """Validate and convert ``values`` to a finite 1-D float64 array.

    Raises ``NonFiniteValueError`` on NaN/Inf components and ``ValueError``
    on empty or wrongly sized input.
    """
    x = np.atleast_1d(np.asarray(values, dtype=np.float64))
    if x.ndim != 1 or x.size < 1:
        raise ValueError(f"expected a 1-D vector with n >= 1, got shape {x.shape}")
    if not np.isfinite(x).all():
        bad = tuple(int(i) for i in np.flatnonzero(~np.isfinite(x)))
        raise NonFiniteValueError(f"non-finite vector components at {bad}", components=bad)
    if dim is not None and x.size != dim:
        raise ValueError(f"expected dimension {dim}, got {x.size}")
    return x


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient with C(n, k) = 0 for k outside {0, ..., n}.

    Restricted to n <= MAX_ORDER so every coefficient is exactly
    representable after conversion to float.
    """
    if not 0 <= n <= MAX_ORDER:
        raise ValueError(f"binomial requires 0 <= n <= {MAX_ORDER}, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def alternating_binomial_sum(p: int, values: Sequence[Array]) -> Array:
    """Signed binomial combination sum_{i=0}^{p} (-1)^i C(p, i) * values[i].

    This is the p-th order finite difference of the sequence; it annihilates
    samples of any polynomial of degree < p taken on a uniform grid.
    """
    if p < 1:
        raise ValueError(f"order p must be >= 1, got {p}")
    if len(values) != p + 1:
        raise ValueError(f"expected {p + 1} vectors for order {p}, got {len(values)}")
    vecs = [np.asarray(v, dtype=np.float64) for v in values]
    n = vecs[0].shape
    for i, v in enumerate(vecs[1:], start=1):
        if v.shape != n:
            raise ValueError(f"dimension mismatch at index {i}: {v.shape} != {n}")
    acc = vecs[0].copy()
    for i in range(1, p + 1):
        acc += float((-1) ** i * binomial(p, i)) * vecs[i]
    return acc


@dataclass(frozen=True)
class SolverConfig:
    """Parameters of the prediction-correction loop.

    h      -- sampling period in seconds, > 0
    P      -- maximum prediction order, 1 <= P <= MAX_ORDER
    v      -- velocity threshold of the acceptance gate (units of ||x|| per
              unit time), >= 0; pass ``UNBOUNDED`` to disable the gate
    alpha  -- gradient-descent step size of the correction, > 0
    C      -- number of correction iterations per round, >= 1
    """

    h: float
    P: int
    v: float
    alpha: float
    C: int

    def __post_init__(self):
        if not (math.isfinite(self.h) and self.h > 0):
            raise ValueError(f"sampling period h must be finite and > 0, got {self.h}")
        if not isinstance(self.P, int) or not 1 <= self.P <= MAX_ORDER:
            raise ValueError(f"prediction order P must be an integer in [1, {MAX_ORDER}], got {self.P}")
        if math.isnan(self.v) or self.v < 0:
            raise ValueError(f"velocity threshold v must be >= 0 or UNBOUNDED, got {self.v}")
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise ValueError(f"step size alpha must be finite and > 0, got {self.alpha}")
        if not isinstance(self.C, int) or self.C < 1:
            raise ValueError(f"correction iterations C must be an integer >= 1, got {self.C}")

    @property
    def gate_disabled(self) -> bool:
        return math.isinf(self.v)


class History:
    """Ring buffer of the last P corrected solutions, most recent first.

    Initialized with P copies of the starting point, so predictions of every
    order are defined from the first round.  ``push`` evicts the oldest entry.
    Value semantics: entries are copied in and never mutated, and ``clone``
    forks the buffer for what-if runs.
    """

    __slots__ = ("_buffer",)

    def __init__(self, x0, capacity: int):
        if capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {capacity}")
        x = as_vector(x0)
        self._buffer = [x.copy() for _ in range(capacity)]

    @property
    def capacity(self) -> int:
        return len(self._buffer)

    @property
    def dim(self) -> int:
        return self._buffer[0].size

    @property
    def latest(self) -> Array:
        return self._buffer[0]

    def __len__(self) -> int:
        return len(self._buffer)

    def __getitem__(self, i: int) -> Array:
        """i = 0 is the most recent solution x_{k-1}, i = 1 is x_{k-2}, ..."""
        return self._buffer[i]

    def push(self, x) -> None:
        v = as_vector(x, dim=self.dim)
        self._buffer.insert(0, v.copy())
        self._buffer.pop()

    def clone(self) -> "History":
        out = History.__new__(History)
        out._buffer = [v.copy() for v in self._buffer]
        return out


@dataclass(frozen=True)
class TraceRecord:
    """Per-round log entry.

    ``tracking_error`` and ``f_gap`` are None when the problem does not
    declare a known trajectory / optimal value; they are never filled with
    zeros.
    """

    k: int
    t: float
    p_accepted: int
    x_hat: Array
    x_corrected: Array
    step_norm: float
    grad_norm_at_prediction: float
    tracking_error: float | None = None
    f_gap: float | None = None
