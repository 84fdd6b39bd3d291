"""Correction step: refine a prediction against the revealed objective.

The solver accepts any callable satisfying the ``Corrector`` contract;
gradient descent is the one shipped here since all the library's error
bounds assume it.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Callable

import numpy as np

from .core import Array, NonFiniteValueError, as_vector

if TYPE_CHECKING:
    from .problems import TimeVaryingProblem

#: A corrector maps (problem, time, initial point) to a corrected solution.
#: Implementations must be deterministic given identical inputs.
Corrector = Callable[["TimeVaryingProblem", float, Array], Array]


def gd_correct(problem: "TimeVaryingProblem", t: float, x0, alpha: float, C: int) -> Array:
    """Run C gradient-descent iterations x <- x - alpha * grad f(x; t).

    Raises ``NonFiniteValueError`` with the offending iteration and component
    indices if a gradient evaluation returns NaN or infinity; the caller
    decides whether to abort the surrounding run.
    """
    if C < 1:
        raise ValueError(f"iteration count C must be >= 1, got {C}")
    if not alpha > 0:
        raise ValueError(f"step size alpha must be > 0, got {alpha}")
    x = as_vector(x0, dim=problem.dim)
    for c in range(C):
        g = np.asarray(problem.gradient(x, t), dtype=np.float64)
        if not np.isfinite(g).all():
            bad = tuple(int(i) for i in np.flatnonzero(~np.isfinite(g)))
            raise NonFiniteValueError(
                f"non-finite gradient at correction iteration {c}, components {bad}",
                iteration=c, components=bad)
        x = x - alpha * g
    return x


def make_gd_corrector(alpha: float, C: int) -> Corrector:
    """Bind step size and iteration count into a ``Corrector``."""

    def correct(problem: "TimeVaryingProblem", t: float, x0: Array) -> Array:
        return gd_correct(problem, t, x0, alpha, C)

    return correct
