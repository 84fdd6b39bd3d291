"""Closed-form tracking-error bounds, parameter prescriptions, and
trace-verification helpers.

Notation used throughout:

* ``gamma``   -- per-round contraction factor of the correction step
                 (theta1^C for strongly convex objectives, rho * theta2^(C/2)
                 under a local gradient-dominance condition).
* ``sigma_p`` -- bound on the norm of the p-th time derivative of the target
                 trajectory; the order-p extrapolation residual is
                 sigma_p * h^p.
* ``kappa``   -- condition number L20 / mu.

Every evaluator is pure and total on its documented domain; preconditions
are enforced with explicit exceptions rather than silently clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .core import Array, binomial
from .problems import TimeVaryingProblem
from .solver import RunResult

# ---------------------------------------------------------------------------
# Parameter containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TheoryParams:
    """Inputs of the general tracking-error bound.

    gamma  -- correction contraction factor, in [0, 1)
    sigma  -- map from derivative order p to the trajectory bound sigma_p
    r      -- locality radius of the contraction guarantee (inf for global)
    e_k0   -- tracking error at the burn-in round k0
    k0     -- burn-in round index
    """

    gamma: float
    sigma: Mapping[int, float]
    r: float = math.inf
    e_k0: float = 0.0
    k0: int = 0

    def __post_init__(self):
        if not 0 <= self.gamma < 1:
            raise ValueError(f"gamma must be in [0, 1), got {self.gamma}")
        if not self.r > 0:
            raise ValueError(f"locality radius r must be > 0, got {self.r}")
        if self.e_k0 < 0:
            raise ValueError(f"e_k0 must be >= 0, got {self.e_k0}")

    def require_contractive(self, P: int) -> None:
        limit = 1.0 / (2**P - 1)
        if not self.gamma < limit:
            raise ValueError(
                f"gamma={self.gamma} violates gamma < 1/(2^P - 1) = {limit} for P={P}")


def _check_gamma(P: int, gamma: float) -> None:
    if gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    limit = 1.0 / (2**P - 1)
    if not gamma < limit:
        raise ValueError(
            f"gamma={gamma} is not below 1/(2^P - 1) = {limit} for P={P}; "
            f"the error recursion does not contract")


# ---------------------------------------------------------------------------
# Asymptotic bounds and the error recursion
# ---------------------------------------------------------------------------


def asymptotic_bound(P: int, p: int, gamma: float, sigma_p: float, h: float) -> float:
    """Asymptotic tracking-error limit 2^(P-p) sigma_p / (1 - (2^P - 1) gamma) * h^p."""
    if not 1 <= p <= P:
        raise ValueError(f"need 1 <= p <= P, got p={p}, P={P}")
    _check_gamma(P, gamma)
    if not (h > 0):
        raise ValueError(f"h must be > 0, got {h}")
    if sigma_p < 0 or not math.isfinite(sigma_p):
        raise ValueError(f"sigma_p must be finite and >= 0, got {sigma_p}")
    return 2.0 ** (P - p) * sigma_p / (1.0 - (2**P - 1) * gamma) * h**p


def dominant_root(P: int, gamma: float) -> float:
    """Largest-magnitude root ((1 + 1/gamma)^(1/P) - 1)^(-1) of the error
    recursion's characteristic polynomial (1 + gamma) z^P - gamma (z + 1)^P.

    Below 1 exactly when gamma < 1/(2^P - 1); it governs how fast the
    transient term of the tracking error decays.
    """
    if not gamma > 0:
        raise ValueError(f"gamma must be > 0 for the dominant root, got {gamma}")
    _check_gamma(P, gamma)
    return 1.0 / ((1.0 + 1.0 / gamma) ** (1.0 / P) - 1.0)


def iterate_error_recursion(P: int, p: int, gamma: float, sigma_p: float, h: float,
                            initial_errors: Sequence[float], K: int) -> list[float]:
    """Iterate e_k = gamma * sum_i C(P, i) e_{k-i} + 2^(P-p) sigma_p h^p.

    ``initial_errors`` holds the P seed values in chronological order
    (oldest first); the returned list is those P values followed by K
    generated ones.  The result majorizes any trace whose errors satisfy
    the recursive bound with the same inputs, which sidesteps the
    non-constructive transient constant of the closed-form bound.
    """
    if len(initial_errors) != P:
        raise ValueError(f"need exactly P={P} initial errors, got {len(initial_errors)}")
    if K < 0:
        raise ValueError(f"K must be >= 0, got {K}")
    if not 1 <= p <= P:
        raise ValueError(f"need 1 <= p <= P, got p={p}, P={P}")
    residual = 2.0 ** (P - p) * sigma_p * h**p
    weights = [float(binomial(P, i)) for i in range(1, P + 1)]
    seq = [float(e) for e in initial_errors]
    for _ in range(K):
        acc = residual
        for i, w in enumerate(weights, start=1):
            acc += gamma * w * seq[-i]
        seq.append(acc)
    return seq


# ---------------------------------------------------------------------------
# Parameter prescriptions
# ---------------------------------------------------------------------------


def sc_contraction(mu: float, L20: float, alpha: float) -> float:
    """Per-iteration GD contraction theta1 = max(|1 - alpha mu|, |1 - alpha L20|)
    for mu-strongly convex, L20-smooth objectives with alpha in (0, 2/L20)."""
    if not 0 < mu <= L20:
        raise ValueError(f"need 0 < mu <= L20, got mu={mu}, L20={L20}")
    if not 0 < alpha < 2.0 / L20:
        raise ValueError(f"step size alpha must lie in (0, 2/L20) = (0, {2.0 / L20}), got {alpha}")
    return max(abs(1.0 - alpha * mu), abs(1.0 - alpha * L20))


def prescribe_C_strongly_convex(P: int, mu: float, L20: float, alpha: float) -> int:
    """Smallest iteration count C with C > log(2^P - 1) / log(1 / theta1).

    This makes gamma = theta1^C satisfy the contraction condition
    gamma < 1/(2^P - 1).  Returns 1 when theta1 = 0 (a single step is exact).
    """
    if P < 1:
        raise ValueError(f"P must be >= 1, got {P}")
    theta1 = sc_contraction(mu, L20, alpha)
    if theta1 == 0.0 or P == 1:
        return 1
    threshold = math.log(2**P - 1) / math.log(1.0 / theta1)
    c = max(1, math.floor(threshold) + 1)
    # guard against threshold landing exactly on an integer
    while not c > threshold:
        c += 1
    return c


class PLPrescription(NamedTuple):
    """Exact and coarse iteration counts under local gradient dominance."""

    C: int
    C_coarse: int
    theta2: float
    rho: float
    gamma: float


def prescribe_C_pl(P: int, mu: float, L20: float, alpha: float) -> PLPrescription:
    """Iteration count making gamma = rho * theta2^(C/2) < 1/(2^P - 1).

    theta2 = 1 - alpha mu (2 - alpha L20) is the per-iteration value
    contraction of GD under mu-gradient dominance and
    rho = sqrt(alpha L20 / (2 - alpha L20)) / (1 - sqrt(theta2)) converts it
    to a distance contraction.  ``C`` is the exact smallest count;
    ``C_coarse`` is the closed-form sufficient value
    ceil(2 kappa log(2 kappa (2^P - 1))) valid at alpha = 1/L20.
    """
    if P < 1:
        raise ValueError(f"P must be >= 1, got {P}")
    if not 0 < mu <= L20:
        raise ValueError(f"need 0 < mu <= L20, got mu={mu}, L20={L20}")
    if not 0 < alpha < 2.0 / L20:
        raise ValueError(f"step size alpha must lie in (0, 2/L20) = (0, {2.0 / L20}), got {alpha}")
    theta2 = 1.0 - alpha * mu * (2.0 - alpha * L20)
    if not theta2 < 1.0:
        raise ValueError(f"theta2 must be < 1, got {theta2}")
    theta2 = max(theta2, 0.0)
    rho = math.sqrt(alpha * L20 / (2.0 - alpha * L20)) / (1.0 - math.sqrt(theta2))
    limit = 1.0 / (2**P - 1)
    c = 1
    while rho * theta2 ** (c / 2.0) >= limit:
        c += 1
        if c > 10**7:
            raise ArithmeticError("no contractive C below 1e7; inputs are degenerate")
    kappa = L20 / mu
    coarse = math.ceil(2.0 * kappa * math.log(2.0 * kappa * (2**P - 1)))
    return PLPrescription(C=c, C_coarse=coarse, theta2=theta2, rho=rho,
                          gamma=rho * theta2 ** (c / 2.0))


def prescribe_v(p: int, gamma: float, sigma_1: float, sigma_p: float, h: float,
                e_k0: float, k_minus_k0: int) -> float:
    """Lower bound on the velocity threshold that keeps order-p predictions
    accepted from round k0 + (k_minus_k0) on:

        v >= (1 + (2^p - 3) gamma) / (1 - (2^p - 1) gamma) * sigma_1
             + (1 - gamma) ((2^p - 2) e_k0 gamma^(k - k0 - p + 1) + sigma_p h^p)
               / (h (1 - (2^p - 1) gamma))

    The transient term decays geometrically, leaving a floor proportional to
    the trajectory's maximum velocity sigma_1.  Only meaningful for p >= 2
    (order-1 predictions are always accepted).
    """
    if p < 2:
        raise ValueError(f"the threshold bound applies only for p >= 2, got p={p}")
    _check_gamma(p, gamma)
    if not (h > 0):
        raise ValueError(f"h must be > 0, got {h}")
    if k_minus_k0 < p:
        raise ValueError(f"need k - k0 >= p, got {k_minus_k0} < {p}")
    denom = 1.0 - (2**p - 1) * gamma
    floor = (1.0 + (2**p - 3) * gamma) / denom * sigma_1
    if gamma == 0.0:
        transient = 0.0
    else:
        transient = (2**p - 2) * e_k0 * gamma ** (k_minus_k0 - p + 1)
    return floor + (1.0 - gamma) * (transient + sigma_p * h**p) / (h * denom)


def acceptance_round(p: int, gamma: float, sigma_1: float, sigma_p: float, h: float,
                     v: float, e_k0: float, k0: int = 0,
                     max_scan: int = 1_000_000) -> int | None:
    """Smallest round index from which order-p predictions are guaranteed
    accepted, found by direct scan of

        (2^p - 2) gamma ((v + sigma_1)/(1 - gamma) h + e_k0 gamma^(k - k0 - p))
            + sigma_1 h + sigma_p h^p  <=  v h.

    The left side is monotonically decreasing in k, so the scan stops at the
    first satisfying round.  Returns k0 immediately when the gate is
    disabled or p == 1 (always accepted), and None if no round within
    ``max_scan`` satisfies the inequality.
    """
    if math.isinf(v) or p == 1:
        return k0
    _check_gamma(p, gamma)
    base = sigma_1 * h + sigma_p * h**p
    steady = gamma * (v + sigma_1) / (1.0 - gamma) * h
    for k in range(k0 + p, k0 + p + max_scan):
        transient = 0.0 if gamma == 0.0 else e_k0 * gamma ** (k - k0 - p)
        lhs = (2**p - 2) * (steady + gamma * transient) + base
        if lhs <= v * h:
            return k
    return None


# ---------------------------------------------------------------------------
# Bounds without a smooth trajectory
# ---------------------------------------------------------------------------


def pl_tracking_bound(v: float, L11: float, mu: float, L20: float, kappa: float,
                      theta2: float, C: int, h: float) -> tuple[float, float]:
    """Distance and value-gap limits under global gradient dominance.

    distance: (v + L11/mu) / (1 - sqrt(kappa theta2^C)) * h          (O(h))
    gap:      (L20 / 2) * distance^2                                 (O(h^2))

    Requires kappa * theta2^C < 1, i.e. C > log(kappa) / log(1/theta2).
    """
    if not (mu > 0 and L20 > 0 and h > 0 and kappa >= 1):
        raise ValueError("need mu > 0, L20 > 0, h > 0, kappa >= 1")
    if not 0 <= theta2 < 1:
        raise ValueError(f"theta2 must be in [0, 1), got {theta2}")
    if C < 1:
        raise ValueError(f"C must be >= 1, got {C}")
    contraction = kappa * theta2**C
    if not contraction < 1.0:
        raise ValueError(
            f"kappa * theta2^C = {contraction} >= 1; "
            f"increase C above log(kappa)/log(1/theta2)")
    dist = (v + L11 / mu) / (1.0 - math.sqrt(contraction)) * h
    gap = 0.5 * L20 * dist * dist
    return dist, gap


def nonconvex_bound(L10: float, L01: float, v: float, alpha: float, L20: float,
                    h: float) -> float:
    """Asymptotic bound sqrt((L10 v + L01) h / (alpha - L20 alpha^2 / 2)) on
    the running average of gradient norms at the predictions.

    Holds for bounded-below objectives with Lipschitz constants L10 (in x)
    and L01 (in t); it degrades as the velocity threshold v grows, which is
    why an open gate is a poor choice without trajectory smoothness.
    """
    if not 0 < alpha < 2.0 / L20:
        raise ValueError(f"step size alpha must lie in (0, 2/L20) = (0, {2.0 / L20}), got {alpha}")
    if L10 < 0 or L01 < 0 or v < 0 or not (h > 0):
        raise ValueError("need L10 >= 0, L01 >= 0, v >= 0, h > 0")
    return math.sqrt((L10 * v + L01) * h / (alpha - 0.5 * L20 * alpha * alpha))


def sigma2_bound(mu: float, L30: float, L21: float, L12: float, L11: float) -> float:
    """Bound on the trajectory's second derivative from objective smoothness:
    L30 L11^2 / mu^3 + 2 L21 L11 / mu^2 + L12 / mu."""
    if not mu > 0:
        raise ValueError(f"mu must be > 0, got {mu}")
    if min(L30, L21, L12, L11) < 0:
        raise ValueError("smoothness constants must be >= 0")
    return L30 * L11**2 / mu**3 + 2.0 * L21 * L11 / mu**2 + L12 / mu


# ---------------------------------------------------------------------------
# Point/set distances
# ---------------------------------------------------------------------------


def point_set_distance(x, points) -> float:
    """dist(x, S) = min over the finite set S of ||x - s||."""
    x = np.asarray(x, dtype=np.float64)
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    return float(np.min(np.linalg.norm(pts - x, axis=1)))


def hausdorff_distance(xs, ys) -> float:
    """Hausdorff distance between two finite point sets."""
    xs = np.atleast_2d(np.asarray(xs, dtype=np.float64))
    ys = np.atleast_2d(np.asarray(ys, dtype=np.float64))
    forward = max(point_set_distance(x, ys) for x in xs)
    backward = max(point_set_distance(y, xs) for y in ys)
    return max(forward, backward)


def hausdorff_lipschitz_check(problem: TimeVaryingProblem, times: Sequence[float]) -> float:
    """Largest Hausdorff-distance-to-time ratio of the solution set over
    consecutive probe times.  For problems with declared mu and L11 the
    ratio is bounded by L11 / mu."""
    if problem.solution is None:
        raise ValueError(f"problem {problem.name!r} declares no solution trajectory")
    if len(times) < 2:
        raise ValueError("need at least two probe times")
    worst = 0.0
    prev_t = times[0]
    prev_set = np.atleast_2d(problem.solution(prev_t))
    for t in times[1:]:
        if t == prev_t:
            raise ValueError("probe times must be distinct")
        cur = np.atleast_2d(problem.solution(t))
        worst = max(worst, hausdorff_distance(prev_set, cur) / abs(t - prev_t))
        prev_t, prev_set = t, cur
    return worst


# ---------------------------------------------------------------------------
# Empirical estimators and trace verification
# ---------------------------------------------------------------------------


def estimate_convergence_order(errors_by_h: Mapping[float, float]) -> float:
    """Least-squares slope of log(error) against log(h)."""
    if len(errors_by_h) < 3:
        raise ValueError(f"need at least 3 sampling periods, got {len(errors_by_h)}")
    hs = np.array(sorted(errors_by_h))
    errs = np.array([errors_by_h[h] for h in hs])
    if not (hs > 0).all():
        raise ValueError("sampling periods must be positive")
    if not (errs > 0).all():
        raise ValueError("errors must be strictly positive for a log-log fit")
    slope, _ = np.polyfit(np.log(hs), np.log(errs), 1)
    return float(slope)


def estimate_sigma_from_trajectory(problem: TimeVaryingProblem, p: int,
                                   t_span: tuple[float, float],
                                   samples: int = 20001) -> float:
    """Estimate sigma_p as the max p-th finite difference of x*(t) over a
    fine grid, divided by the grid step to the p-th power.  An estimate, not
    a certified bound; never use it in tight assertions."""
    if problem.solution is None:
        raise ValueError(f"problem {problem.name!r} declares no solution trajectory")
    lo, hi = t_span
    grid = np.linspace(lo, hi, samples)
    step = grid[1] - grid[0]
    values = np.stack([problem.solution(float(t)) for t in grid])
    diff = values
    for _ in range(p):
        diff = diff[1:] - diff[:-1]
    return float(np.max(np.linalg.norm(diff, axis=1)) / step**p)


def estimate_time_lipschitz(problem: TimeVaryingProblem, times: Sequence[float],
                            probes: Sequence[Array]) -> float:
    """Estimate L01 = sup |f(x; s) - f(x; t)| / |s - t| over consecutive
    sample times and probe points."""
    worst = 0.0
    for x in probes:
        prev = times[0]
        f_prev = problem.value(np.asarray(x, dtype=np.float64), prev)
        for t in times[1:]:
            f_cur = problem.value(np.asarray(x, dtype=np.float64), t)
            worst = max(worst, abs(f_cur - f_prev) / abs(t - prev))
            prev, f_prev = t, f_cur
    return worst


def verify_recursion_certificate(errors: Sequence[float], P: int, p: int,
                                 gamma: float, sigma_p: float, h: float,
                                 k1: int, slack: float = 1e-9) -> list[int]:
    """Check e_k <= gamma sum_i C(P, i) e_{k-i} + 2^(P-p) sigma_p h^p + slack
    at every round k >= k1 + P; returns the violating rounds (empty = pass).

    ``errors[j]`` is the tracking error of round j + 1.
    """
    residual = 2.0 ** (P - p) * sigma_p * h**p
    weights = [float(binomial(P, i)) for i in range(1, P + 1)]
    bad = []
    start = max(k1 + P, P + 1)
    for k in range(start, len(errors) + 1):
        bound = residual + gamma * sum(w * errors[k - 1 - i] for i, w in enumerate(weights, start=1))
        if errors[k - 1] > bound + slack:
            bad.append(k)
    return bad


def verify_one_step_bound(result: RunResult, problem: TimeVaryingProblem,
                          v: float, sigma_1: float, slack: float = 1e-9) -> list[int]:
    """Check e_k <= ||x_{k-1} - x*(t_{k-1})|| + (v + sigma_1) h at every
    recorded round of a finite-velocity run; returns violating rounds."""
    if problem.solution is None:
        raise ValueError(f"problem {problem.name!r} declares no solution trajectory")
    if math.isinf(v):
        raise ValueError("the one-step bound applies to finite velocity thresholds")
    records = result.records
    if not records:
        return []
    h = records[0].t / records[0].k
    bad = []
    prev_x = result.x0
    prev_t = 0.0
    for rec in records:
        prev_err = float(np.linalg.norm(prev_x - problem.solution(prev_t)))
        if rec.tracking_error is None:
            raise ValueError("trace lacks tracking errors")
        if rec.tracking_error > prev_err + (v + sigma_1) * h + slack:
            bad.append(rec.k)
        prev_x, prev_t = rec.x_corrected, rec.t
    return bad


def verify_energy_bound(result: RunResult, problem: TimeVaryingProblem,
                        L10: float, L01: float, v: float,
                        slack: float = 1e-9) -> list[int]:
    """Check the per-round energy growth bound
    f(x_hat_k; t_k) <= f(x_{k-1}; t_{k-1}) + (L10 v + L01) h."""
    if math.isinf(v):
        raise ValueError("the energy bound applies to finite velocity thresholds")
    records = result.records
    if not records:
        return []
    h = records[0].t / records[0].k
    budget = (L10 * v + L01) * h
    bad = []
    prev_x = result.x0
    prev_t = 0.0
    for rec in records:
        lhs = problem.value(rec.x_hat, rec.t)
        rhs = problem.value(prev_x, prev_t) + budget
        if lhs > rhs + slack:
            bad.append(rec.k)
        prev_x, prev_t = rec.x_corrected, rec.t
    return bad


# ---------------------------------------------------------------------------
# Theory report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReportEntry:
    """One computed constant or bound with its provenance."""

    name: str
    value: float | int | None
    source: str
    inputs: str = ""

    @property
    def available(self) -> bool:
        return self.value is not None


@dataclass
class TheoryReport:
    """Named scalar results, each tagged with the rule that produced it."""

    title: str
    entries: list[ReportEntry] = field(default_factory=list)

    def add(self, name: str, value, source: str, inputs: str = "") -> None:
        if value is not None:
            value = float(value) if not isinstance(value, int) else value
        self.entries.append(ReportEntry(name, value, source, inputs))

    def get(self, name: str) -> ReportEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def to_text(self) -> str:
        width = max([len(e.name) for e in self.entries] + [4])
        lines = [f"# {self.title}", ""]
        lines.append(f"{'name'.ljust(width)}  {'value'.ljust(24)}  source")
        lines.append(f"{'-' * width}  {'-' * 24}  {'-' * 32}")
        for e in self.entries:
            val = "unavailable" if e.value is None else _fmt(e.value)
            src = e.source + (f" [{e.inputs}]" if e.inputs else "")
            lines.append(f"{e.name.ljust(width)}  {val.ljust(24)}  {src}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        lines = ["name,value,source,inputs"]
        for e in self.entries:
            val = "" if e.value is None else _fmt(e.value)
            lines.append(f"{e.name},{val},{_q(e.source)},{_q(e.inputs)}")
        return "\n".join(lines) + "\n"


def _fmt(value) -> str:
    if isinstance(value, int):
        return str(value)
    return format(value, ".17g")


def _q(text: str) -> str:
    if "," in text or '"' in text:
        return '"' + text.replace('"', '""') + '"'
    return text


def build_theory_report(problem: TimeVaryingProblem, P: int, C: int, v: float,
                        alpha: float, h: float, e_k0: float = 0.0,
                        e_k0_is_estimate: bool = True) -> TheoryReport:
    """Assemble every applicable prescription and bound for a problem.

    Constants missing from the problem declaration make the dependent
    entries unavailable; nothing is defaulted.  ``e_k0`` feeds the velocity
    prescription's transient term; pass a measured value when the trajectory
    is observable, otherwise it is reported as a user estimate.
    """
    consts = problem.constants
    report = TheoryReport(title=f"theory report: {problem.name} "
                                f"(P={P}, C={C}, v={_fmt(float(v))}, alpha={_fmt(alpha)}, h={_fmt(h)})")
    mu = consts.get("mu")
    L20 = consts.get("L20")
    L11 = consts.get("L11")

    if mu is not None and L20 is not None and not 0 < alpha < 2.0 / L20:
        report.add("theta1", None, "GD contraction, strongly convex",
                   f"alpha={_fmt(alpha)} outside (0, 2/L20); contraction theory inapplicable")
        report.add("C_strongly_convex", None,
                   "smallest C with theta1^C < 1/(2^P - 1)", "alpha outside (0, 2/L20)")
        report.add("v_min", None, "acceptance threshold floor", "alpha outside (0, 2/L20)")
    elif mu is not None and L20 is not None:
        kappa = L20 / mu
        report.add("kappa", kappa, "condition number L20/mu")
        theta1 = sc_contraction(mu, L20, alpha)
        report.add("theta1", theta1, "GD contraction, strongly convex",
                   f"mu={mu}, L20={L20}, alpha={_fmt(alpha)}")
        c_sc = prescribe_C_strongly_convex(P, mu, L20, alpha)
        report.add("C_strongly_convex", c_sc,
                   "smallest C with theta1^C < 1/(2^P - 1)")
        gamma = theta1**C
        report.add("gamma", gamma, "correction contraction theta1^C", f"C={C}")
        pl = prescribe_C_pl(P, mu, L20, alpha)
        report.add("theta2", pl.theta2, "GD value contraction, gradient dominance")
        report.add("rho", pl.rho, "distance conversion factor, gradient dominance")
        report.add("C_pl", pl.C, "smallest C with rho theta2^(C/2) < 1/(2^P - 1)")
        report.add("C_pl_coarse", pl.C_coarse,
                   "closed-form sufficient C at alpha = 1/L20")

        sigma1 = problem.sigma_bound(1)
        if math.isfinite(sigma1) and gamma < 1.0 / (2**P - 1) and P >= 2:
            sigma_P = problem.sigma_bound(P)
            resid = sigma_P if math.isfinite(sigma_P) else 0.0
            note = "" if math.isfinite(sigma_P) else "sigma_P unknown; residual neglected; "
            v_min = prescribe_v(P, gamma, sigma1, resid, h, e_k0, k_minus_k0=10 * P + 100)
            report.add("v_min", v_min, "acceptance threshold floor",
                       note + ("e_k0 is a user estimate" if e_k0_is_estimate else "e_k0 measured"))
        if math.isfinite(sigma1):
            report.add("sigma_1", sigma1, "declared trajectory velocity bound")
        if gamma < 1.0 / (2**P - 1):
            for p in range(1, P + 1):
                s_p = problem.sigma_bound(p)
                if math.isfinite(s_p):
                    report.add(f"tracking_error_limit_p{p}",
                               asymptotic_bound(P, p, gamma, s_p, h),
                               "asymptotic tracking-error limit",
                               f"sigma_{p}={_fmt(s_p)}")
            if gamma > 0:
                report.add("transient_decay_rate", dominant_root(P, gamma),
                           "dominant root of the error recursion")
        if L11 is not None and math.isfinite(v) and C >= 1:
            kt = kappa * pl.theta2**C
            if kt < 1:
                dist, gap = pl_tracking_bound(v, L11, mu, L20, kappa, pl.theta2, C, h)
                report.add("pl_distance_limit", dist,
                           "gradient-dominance tracking limit, O(h)")
                report.add("pl_gap_limit", gap,
                           "gradient-dominance value-gap limit, O(h^2)")
    else:
        report.add("theta1", None, "GD contraction, strongly convex",
                   "mu or L20 not declared")
        report.add("C_strongly_convex", None,
                   "smallest C with theta1^C < 1/(2^P - 1)", "mu or L20 not declared")
        report.add("v_min", None, "acceptance threshold floor", "mu or L20 not declared")

    L10 = consts.get("L10")
    L01 = consts.get("L01")
    if (L10 is not None and L01 is not None and L20 is not None
            and math.isfinite(v) and 0 < alpha < 2.0 / L20):
        report.add("avg_grad_norm_limit", nonconvex_bound(L10, L01, v, alpha, L20, h),
                   "non-convex average-gradient limit, O(sqrt(h))")
    else:
        report.add("avg_grad_norm_limit", None,
                   "non-convex average-gradient limit, O(sqrt(h))",
                   "L10, L01 not declared or v unbounded")
    return report
