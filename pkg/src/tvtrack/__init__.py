"""Time-varying optimization: extrapolation-based prediction-correction
solvers, closed-form tracking-error bounds, and a reproducible benchmark
harness."""

from .analysis import (PLPrescription, TheoryParams, TheoryReport,
                       acceptance_round, asymptotic_bound, build_theory_report,
                       dominant_root, estimate_convergence_order,
                       hausdorff_distance, hausdorff_lipschitz_check,
                       iterate_error_recursion, nonconvex_bound,
                       pl_tracking_bound, point_set_distance,
                       prescribe_C_pl, prescribe_C_strongly_convex,
                       prescribe_v, sc_contraction, sigma2_bound,
                       verify_energy_bound, verify_one_step_bound,
                       verify_recursion_certificate)
from .core import (MAX_ORDER, UNBOUNDED, History, NonFiniteValueError,
                   SolverConfig, TraceRecord, alternating_binomial_sum,
                   as_vector, binomial)
from .corrector import Corrector, gd_correct, make_gd_corrector
from .predictor import lagrange_residual_bound, predict, select_order
from .problems import (TimeVaryingProblem, counter_uniform,
                       finite_difference_gradient, robust_regression_problem,
                       splitmix64_finisher, target_tracking_problem,
                       toy_problem)
from .solver import (AlgorithmChoice, Gtt, RunResult, Sharp, Spc, Tvgd, run,
                     run_gtt)

__version__ = "0.1.0"

__all__ = [
    "AlgorithmChoice", "Corrector", "Gtt", "History", "MAX_ORDER",
    "NonFiniteValueError", "PLPrescription", "RunResult", "Sharp",
    "SolverConfig", "Spc", "TheoryParams", "TheoryReport",
    "TimeVaryingProblem", "TraceRecord", "Tvgd", "UNBOUNDED",
    "acceptance_round", "alternating_binomial_sum", "as_vector",
    "asymptotic_bound", "binomial", "build_theory_report", "counter_uniform",
    "dominant_root", "estimate_convergence_order",
    "finite_difference_gradient", "gd_correct", "hausdorff_distance",
    "hausdorff_lipschitz_check", "iterate_error_recursion",
    "lagrange_residual_bound", "make_gd_corrector", "nonconvex_bound",
    "pl_tracking_bound", "point_set_distance", "predict", "prescribe_C_pl",
    "prescribe_C_strongly_convex", "prescribe_v", "robust_regression_problem",
    "run", "run_gtt", "sc_contraction", "select_order", "sigma2_bound",
    "splitmix64_finisher", "target_tracking_problem", "toy_problem",
    "verify_energy_bound", "verify_one_step_bound",
    "verify_recursion_certificate",
]
