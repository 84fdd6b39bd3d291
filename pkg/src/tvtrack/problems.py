"""Built-in time-varying benchmark problems with analytic oracles.

Three families are shipped:

* ``toy_problem`` -- a one-dimensional non-convex objective whose tracked
  local minimum drifts and eventually vanishes, forcing the solver to jump
  to a neighboring branch.
* ``target_tracking_problem`` -- a two-dimensional strongly convex quadratic
  whose minimizer follows a smooth closed curve.
* ``robust_regression_problem`` -- a non-convex regression with a bounded
  loss, data resampled at every sampling time from a deterministic
  counter-based generator, and a planted smooth solution trajectory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .core import Array, as_vector

# ---------------------------------------------------------------------------
# Problem container
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TimeVaryingProblem:
    """Oracle bundle for min_x f(x; t).

    ``solution`` (the known stationary trajectory x*(t)), ``optimal_value``
    (f*(t)) and ``hessian`` are optional; metrics that need them are simply
    not produced when absent.  ``sigma`` maps a derivative order p to an
    upper bound on sup_t ||d^p x*(t) / dt^p|| (math.inf when unknown).
    ``constants`` holds declared smoothness constants under the keys
    "L20", "mu", "L11", "L10", "L01", "L30", "L21", "L12" (only those known).
    """

    name: str
    dim: int
    value: Callable[[Array, float], float]
    gradient: Callable[[Array, float], Array]
    hessian: Callable[[Array, float], Array] | None = None
    solution: Callable[[float], Array] | None = None
    optimal_value: Callable[[float], float] | None = None
    sigma: Callable[[int], float] | None = None
    constants: Mapping[str, float] = field(default_factory=dict)

    def sigma_bound(self, p: int) -> float:
        if p < 1:
            raise ValueError(f"derivative order must be >= 1, got {p}")
        if self.sigma is None:
            return math.inf
        return self.sigma(p)


def finite_difference_gradient(problem: TimeVaryingProblem, x, t: float,
                               eps: float = 1e-6) -> Array:
    """Central-difference gradient, used to cross-check analytic oracles."""
    x = as_vector(x, dim=problem.dim)
    g = np.empty(problem.dim)
    for i in range(problem.dim):
        e = np.zeros(problem.dim)
        e[i] = eps
        g[i] = (problem.value(x + e, t) - problem.value(x - e, t)) / (2 * eps)
    return g


# ---------------------------------------------------------------------------
# Deterministic counter-based random numbers
# ---------------------------------------------------------------------------

_M64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def splitmix64_finisher(z: int) -> int:
    """The splitmix64 output scrambler on a 64-bit state."""
    z &= _M64
    z ^= z >> 30
    z = (z * _MIX1) & _M64
    z ^= z >> 27
    z = (z * _MIX2) & _M64
    z ^= z >> 31
    return z


def counter_uniform(seed: int, k: int, i: int, component: int) -> float:
    """Uniform draw in [-1, 1] addressed by (seed, round, row, component).

    The state is derived by folding each index into the seed through the
    splitmix64 finisher: s <- finisher(s + (index + 1) * 0x9E3779B97F4A7C15)
    for index in (k, i, component).  Draws are random-access (independent of
    evaluation order) and bit-exact across platforms.  The float is built
    from the top 53 bits as (s >> 11) / 2^52 - 1.
    """
    s = seed & _M64
    for idx in (k, i, component):
        s = splitmix64_finisher((s + ((idx + 1) * _GOLDEN)) & _M64)
    return (s >> 11) / float(1 << 52) - 1.0


def _uniform_block(seed: int, k: int, m: int, n: int) -> Array:
    """Vectorized ``counter_uniform`` for an (m, n) block at round k."""

    def finisher(z: Array) -> Array:
        z = z.copy()
        z ^= z >> np.uint64(30)
        z *= np.uint64(_MIX1)
        z ^= z >> np.uint64(27)
        z *= np.uint64(_MIX2)
        z ^= z >> np.uint64(31)
        return z

    gold = np.uint64(_GOLDEN)
    with np.errstate(over="ignore"):
        sk = finisher(np.array([(seed + (k + 1) * _GOLDEN) & _M64], dtype=np.uint64))
        rows = (np.arange(m, dtype=np.uint64) + np.uint64(1)).reshape(-1, 1)
        cols = (np.arange(n, dtype=np.uint64) + np.uint64(1)).reshape(1, -1)
        si = finisher(sk + rows * gold)
        sc = finisher(si + cols * gold)
    return (sc >> np.uint64(11)).astype(np.float64) / float(1 << 52) - 1.0


# ---------------------------------------------------------------------------
# Toy problem: f(x; t) = sin(x - t) + x^2 / 10
# ---------------------------------------------------------------------------


def _toy_minimizer(t: float) -> float:
    # The tracked stationary point lies on a branch where -sin(x - t) >= 0,
    # i.e. x - t in [-(2j+1) pi, -2j pi].  On each branch the gradient
    # cos(x - t) + x/5 is strictly increasing in x, so bisection applies.
    # A branch hosts a root iff t <= (2j+1) pi + 5 (left end nonpositive)
    # and t >= 2j pi - 5 (right end nonnegative); the smallest such j is the
    # branch the solver tracks, and it switches when the current minimum
    # merges with its neighboring maximum and vanishes (t = pi + 5 for j=0).
    j = 0
    while t > (2 * j + 1) * math.pi + 5.0:
        j += 1
    lo = t - (2 * j + 1) * math.pi
    hi = t - 2 * j * math.pi

    def g(x: float) -> float:
        return math.cos(x - t) + x / 5.0

    glo = g(lo)
    if glo > 0:
        raise ValueError(f"no stationary point bracket at t={t}")
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if g(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13:
            break
    return 0.5 * (lo + hi)


def toy_problem() -> TimeVaryingProblem:
    """One-dimensional f(x; t) = sin(x - t) + x^2 / 10.

    Non-convex with multiple isolated branches of local minima; the branch
    being tracked disappears at t = pi + 5.  The second derivative is
    -sin(x - t) + 1/5, hence the objective is 1.2-smooth and locally
    0.2-strongly convex around any tracked minimum.  The trajectory has no
    closed form; ``solution`` locates it by bisection to 1e-13 and exists
    for metric purposes only.
    """

    def value(x: Array, t: float) -> float:
        return math.sin(x[0] - t) + x[0] * x[0] / 10.0

    def gradient(x: Array, t: float) -> Array:
        return np.array([math.cos(x[0] - t) + x[0] / 5.0])

    def hessian(x: Array, t: float) -> Array:
        return np.array([[-math.sin(x[0] - t) + 0.2]])

    def solution(t: float) -> Array:
        return np.array([_toy_minimizer(t)])

    def optimal_value(t: float) -> float:
        return value(solution(t), t)

    def sigma(p: int) -> float:
        # mu <= f'' on the tracked branch and ||grad_xt f|| <= 1 give the
        # first-derivative bound 1 / 0.2; higher derivatives are not declared.
        return 5.0 if p == 1 else math.inf

    return TimeVaryingProblem(
        name="toy",
        dim=1,
        value=value,
        gradient=gradient,
        hessian=hessian,
        solution=solution,
        optimal_value=optimal_value,
        sigma=sigma,
        constants={"L20": 1.2, "mu": 0.2, "L11": 1.0},
    )


# ---------------------------------------------------------------------------
# Target tracking: f(x; t) = ||x - y(t)||^2
# ---------------------------------------------------------------------------


def target_tracking_problem() -> TimeVaryingProblem:
    """Two-dimensional quadratic tracking y(t) = (10 sin 0.5t, 23 cos 0.3t).

    Strongly convex with mu = L20 = 2 and exactly known trajectory
    x*(t) = y(t); the p-th derivative norm is bounded by
    sqrt((10 * 0.5^p)^2 + (23 * 0.3^p)^2).
    """

    def y(t: float) -> Array:
        return np.array([10.0 * math.sin(0.5 * t), 23.0 * math.cos(0.3 * t)])

    def value(x: Array, t: float) -> float:
        d = x - y(t)
        return float(d @ d)

    def gradient(x: Array, t: float) -> Array:
        return 2.0 * (x - y(t))

    def hessian(x: Array, t: float) -> Array:
        return 2.0 * np.eye(2)

    def sigma(p: int) -> float:
        return math.hypot(10.0 * 0.5**p, 23.0 * 0.3**p)

    # ||grad_xt f|| = 2 ||dy/dt|| <= 2 sqrt(5^2 + 6.9^2) < 17.04, and
    # ||grad_xtt f|| = 2 ||d2y/dt2|| <= 2 sqrt(2.5^2 + 2.07^2).
    return TimeVaryingProblem(
        name="target_tracking",
        dim=2,
        value=value,
        gradient=gradient,
        hessian=hessian,
        solution=y,
        optimal_value=lambda t: 0.0,
        sigma=sigma,
        constants={
            "L20": 2.0,
            "mu": 2.0,
            "L11": 17.04,
            "L30": 0.0,
            "L21": 0.0,
            "L12": 2.0 * math.hypot(2.5, 2.07),
        },
    )


# ---------------------------------------------------------------------------
# Robust regression with a bounded non-convex loss
# ---------------------------------------------------------------------------


def _loss(z: Array) -> Array:
    return z * z / (1.0 + z * z)


def _loss_prime(z: Array) -> Array:
    s = 1.0 + z * z
    return 2.0 * z / (s * s)


def _loss_second(z: Array) -> Array:
    s = 1.0 + z * z
    return 2.0 * (1.0 - 3.0 * z * z) / (s * s * s)


def robust_regression_problem(n: int = 10, m: int = 100, seed: int = 0,
                              h: float = 0.1) -> TimeVaryingProblem:
    """Non-convex regression f(x; t) = (1/m) sum_i loss(a_i(t)' x - b_i(t)).

    The loss is z^2 / (1 + z^2) (bounded by 1, 2-smooth).  At each sampling
    time t_k = k h the rows a_i are redrawn i.i.d. uniform on [-1, 1]^n from
    the counter-based generator keyed by (seed, k, i, component), and
    b_i = a_i' x*(t_k) plants the smooth trajectory
    x*(t) = (cos(t/n), cos(2t/n), ..., cos(t)).  The objective is therefore
    non-smooth in t; no time-Lipschitz constant is declared and metrics rely
    on the planted trajectory.  Identical (n, m, seed) yield bit-identical
    data on every platform.
    """
    if n < 1 or m < 1:
        raise ValueError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    if not h > 0:
        raise ValueError(f"sampling period h must be > 0, got {h}")

    js = np.arange(1, n + 1, dtype=np.float64)

    def x_star(t: float) -> Array:
        return np.cos(js * t / n)

    cache: dict[int, tuple[Array, Array]] = {}

    def data(t: float) -> tuple[Array, Array]:
        k = round(t / h)
        if k not in cache:
            a = _uniform_block(seed, k, m, n)
            cache[k] = (a, a @ x_star(k * h))
        return cache[k]

    def value(x: Array, t: float) -> float:
        a, b = data(t)
        return float(np.mean(_loss(a @ x - b)))

    def gradient(x: Array, t: float) -> Array:
        a, b = data(t)
        return (a.T @ _loss_prime(a @ x - b)) / m

    def hessian(x: Array, t: float) -> Array:
        a, b = data(t)
        return (a.T * _loss_second(a @ x - b)) @ a / m

    def sigma(p: int) -> float:
        return math.sqrt(float(np.sum((js / n) ** (2 * p))))

    # sup |loss'| = 9 / (8 sqrt(3)) (attained at z = 1/sqrt(3)) and
    # ||a_i|| <= sqrt(n) bound the gradient norm.
    l10 = 9.0 * math.sqrt(n) / (8.0 * math.sqrt(3.0))
    return TimeVaryingProblem(
        name="robust_regression",
        dim=n,
        value=value,
        gradient=gradient,
        hessian=hessian,
        solution=x_star,
        optimal_value=lambda t: 0.0,
        sigma=sigma,
        constants={"L20": 2.0, "L10": l10},
    )


BUILTIN_PROBLEMS = {
    "toy": toy_problem,
    "target_tracking": target_tracking_problem,
    "robust_regression": robust_regression_problem,
}
