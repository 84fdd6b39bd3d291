"""Configuration-driven experiment runner.

Configs are flat ``key = value`` text files (``#`` starts a comment).  The
``preset`` key expands to a full experiment definition which individual keys
may override.  The keys ``h``, ``P``, ``C``, ``v`` and ``algorithm`` accept
comma-separated lists; a config describes the cartesian product of the
applicable axes, one output trace per run.

Outputs per invocation: ``trace_<name>.csv`` for every run, one
``bounds_<name>.txt`` theory report, and ``summary.csv``.  Outputs are
byte-identical for identical configs.  Exit codes: 0 success, 1 config
error, 2 at least one run aborted.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .analysis import build_theory_report
from .core import UNBOUNDED, SolverConfig
from .problems import (BUILTIN_PROBLEMS, TimeVaryingProblem,
                       robust_regression_problem)
from .solver import Gtt, RunResult, Sharp, Spc, Tvgd, run

TRACE_COLUMNS = ["k", "t", "p_accepted", "step_norm", "grad_norm_pred",
                 "tracking_error", "f_gap"]

PRESETS: dict[str, dict[str, str]] = {
    # toy problem, order/period sweep at a fixed correction budget
    "experiment1": {
        "problem": "toy", "algorithm": "sharp",
        "h": "1,0.1,0.01", "P": "1,2,4,7", "C": "30", "v": "20",
        "alpha": "0.8333333333333334", "horizon": "16", "x0": "0",
    },
    # toy problem, correction/threshold sweep at a fixed order
    "experiment1b": {
        "problem": "toy", "algorithm": "sharp",
        "h": "0.1", "P": "7", "C": "1,5,30", "v": "0.1,1,20",
        "alpha": "0.8333333333333334", "horizon": "16", "x0": "0",
    },
    # strongly convex target tracking, all algorithms
    "experiment2": {
        "problem": "target_tracking", "algorithm": "sharp,tvgd,spc,gtt",
        "h": "0.1", "P": "7", "C": "1", "v": "10",
        "alpha": "0.5", "K": "400", "x0": "0,0",
    },
    # non-convex robust regression, proposed method against the gradient baseline
    "experiment3": {
        "problem": "robust_regression", "n": "10", "m": "100", "seed": "0",
        "algorithm": "sharp,tvgd", "h": "0.1", "P": "7", "C": "30", "v": "10",
        "alpha": "0.5", "K": "300", "x0": "0",
    },
}

ALGORITHMS = ("sharp", "tvgd", "spc", "gtt")


class ConfigError(Exception):
    """Invalid configuration; ``messages`` lists field-level diagnostics."""

    def __init__(self, messages: list[str]):
        super().__init__("; ".join(messages))
        self.messages = messages


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _gfmt(x: float) -> str:
    return format(x, "g")


# ---------------------------------------------------------------------------
# Config parsing
# ---------------------------------------------------------------------------


def parse_config_text(text: str) -> dict[str, str]:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    errors: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            errors.append(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
            continue
        key, value = line.split("=", 1)
        key, value = key.strip(), value.strip()
        if not key:
            errors.append(f"line {lineno}: empty key")
            continue
        if key in out:
            errors.append(f"line {lineno}: duplicate key {key!r}")
            continue
        out[key] = value
    if errors:
        raise ConfigError(errors)
    return out


def load_config(path: str | Path) -> dict[str, str]:
    raw = parse_config_text(Path(path).read_text())
    preset = raw.pop("preset", None)
    if preset is None:
        return raw
    if preset not in PRESETS:
        raise ConfigError([f"preset: unknown preset {preset!r}; "
                           f"choose from {sorted(PRESETS)}"])
    merged = dict(PRESETS[preset])
    merged.update(raw)
    merged.setdefault("name", preset)
    return merged


def _floats(value: str, field: str, errors: list[str]) -> list[float]:
    out = []
    for part in value.split(","):
        part = part.strip()
        if part.lower() in ("unbounded", "inf", "infinity"):
            out.append(UNBOUNDED)
            continue
        try:
            out.append(float(part))
        except ValueError:
            errors.append(f"{field}: not a number: {part!r}")
    return out


def _ints(value: str, field: str, errors: list[str]) -> list[int]:
    out = []
    for part in value.split(","):
        part = part.strip()
        try:
            out.append(int(part))
        except ValueError:
            errors.append(f"{field}: not an integer: {part!r}")
    return out


@dataclass(frozen=True)
class RunSpec:
    """One fully resolved run of one algorithm."""

    name: str
    problem: str
    algorithm: str
    h: float
    P: int
    C: int
    v: float
    alpha: float
    K: int
    x0: tuple[float, ...] | None
    n: int = 10
    m: int = 100
    seed: int = 0


def expand_runs(config: dict[str, str]) -> list[RunSpec]:
    """Resolve a parsed config into the cartesian product of its axes.

    Only the axes an algorithm actually uses participate in its product
    (the order/threshold axes apply to the full prediction-correction
    method, not to the baselines), so baselines are not duplicated.
    """
    errors: list[str] = []
    known = {"name", "problem", "algorithm", "h", "P", "C", "v", "alpha", "K",
             "horizon", "x0", "n", "m", "seed"}
    for key in config:
        if key not in known:
            errors.append(f"{key}: unknown key")

    problem = config.get("problem", "")
    if problem not in BUILTIN_PROBLEMS:
        errors.append(f"problem: unknown problem {problem!r}; "
                      f"choose from {sorted(BUILTIN_PROBLEMS)}")
    algorithms = [a.strip().lower() for a in config.get("algorithm", "sharp").split(",")]
    for a in algorithms:
        if a not in ALGORITHMS:
            errors.append(f"algorithm: unknown algorithm {a!r}; choose from {ALGORITHMS}")

    hs = _floats(config["h"], "h", errors) if "h" in config else []
    if not hs:
        errors.append("h: required")
    Ps = _ints(config["P"], "P", errors) if "P" in config else [1]
    Cs = _ints(config["C"], "C", errors) if "C" in config else [1]
    vs = _floats(config["v"], "v", errors) if "v" in config else [UNBOUNDED]
    alphas = _floats(config["alpha"], "alpha", errors) if "alpha" in config else []
    if len(alphas) != 1:
        errors.append("alpha: exactly one value required")
    x0 = None
    if "x0" in config:
        vals = _floats(config["x0"], "x0", errors)
        x0 = tuple(vals) if vals else None

    n = m = seed = 0
    for field, default in (("n", 10), ("m", 100), ("seed", 0)):
        raw = config.get(field)
        vals = _ints(raw, field, errors) if raw is not None else [default]
        if len(vals) == 1:
            if field == "n":
                n = vals[0]
            elif field == "m":
                m = vals[0]
            else:
                seed = vals[0]
        else:
            errors.append(f"{field}: exactly one value required")

    fixed_K: int | None = None
    horizon: float | None = None
    if "K" in config:
        ks = _ints(config["K"], "K", errors)
        if len(ks) == 1:
            fixed_K = ks[0]
        else:
            errors.append("K: exactly one value required")
    elif "horizon" in config:
        spans = _floats(config["horizon"], "horizon", errors)
        if len(spans) == 1 and spans[0] > 0:
            horizon = spans[0]
        else:
            errors.append("horizon: exactly one positive value required")
    else:
        errors.append("K: required (or provide horizon)")

    if errors:
        raise ConfigError(sorted(set(errors)))

    def rounds_for(h: float) -> int:
        if fixed_K is not None:
            return fixed_K
        return max(1, round(horizon / h))

    base = config.get("name", "run")
    specs: list[RunSpec] = []
    multi_algo = len(algorithms) > 1
    for algo in algorithms:
        p_axis = Ps if algo == "sharp" else [Ps[0]]
        v_axis = vs if algo == "sharp" else [vs[0]]
        for h in hs:
            K = rounds_for(h)
            for P in p_axis:
                for C in Cs:
                    for v in v_axis:
                        segs = [base]
                        if multi_algo:
                            segs.append(algo)
                        if len(hs) > 1:
                            segs.append(f"h{_gfmt(h)}")
                        if algo == "sharp" and len(Ps) > 1:
                            segs.append(f"P{P}")
                        if len(Cs) > 1:
                            segs.append(f"C{C}")
                        if algo == "sharp" and len(vs) > 1:
                            segs.append(f"v{_gfmt(v)}")
                        specs.append(RunSpec(
                            name="_".join(segs), problem=problem, algorithm=algo,
                            h=h, P=P, C=C, v=v, alpha=alphas[0], K=K, x0=x0,
                            n=n, m=m, seed=seed))

    validation: list[str] = []
    for spec in specs:
        try:
            algo = build_algorithm(spec)
            if isinstance(algo, Gtt):
                SolverConfig(h=spec.h, P=1, v=UNBOUNDED, alpha=spec.alpha, C=spec.C)
            elif not isinstance(algo, Sharp):
                algo.as_config()
        except (ValueError, ConfigError) as exc:
            validation.append(f"{spec.name}: {exc}")
        if spec.K < 1:
            validation.append(f"{spec.name}: K must be >= 1")
    if validation:
        raise ConfigError(sorted(set(validation)))
    return specs


def build_problem(spec: RunSpec) -> TimeVaryingProblem:
    if spec.problem == "robust_regression":
        return robust_regression_problem(n=spec.n, m=spec.m, seed=spec.seed, h=spec.h)
    return BUILTIN_PROBLEMS[spec.problem]()


def build_algorithm(spec: RunSpec):
    if spec.algorithm == "sharp":
        return Sharp(SolverConfig(h=spec.h, P=spec.P, v=spec.v,
                                  alpha=spec.alpha, C=spec.C))
    if spec.algorithm == "tvgd":
        return Tvgd(h=spec.h, alpha=spec.alpha, C=spec.C)
    if spec.algorithm == "spc":
        return Spc(h=spec.h, alpha=spec.alpha, C=spec.C)
    if spec.algorithm == "gtt":
        return Gtt(h=spec.h, alpha=spec.alpha, C=spec.C)
    raise ConfigError([f"algorithm: unknown algorithm {spec.algorithm!r}"])


# ---------------------------------------------------------------------------
# Output files
# ---------------------------------------------------------------------------


def trace_header(dim: int) -> list[str]:
    return (TRACE_COLUMNS
            + [f"x_hat_{i}" for i in range(dim)]
            + [f"x_corr_{i}" for i in range(dim)])


def write_trace(path: Path, result: RunResult, dim: int) -> None:
    lines = [",".join(trace_header(dim))]
    for rec in result.records:
        cells = [str(rec.k), _fmt(rec.t), str(rec.p_accepted),
                 _fmt(rec.step_norm), _fmt(rec.grad_norm_at_prediction),
                 "" if rec.tracking_error is None else _fmt(rec.tracking_error),
                 "" if rec.f_gap is None else _fmt(rec.f_gap)]
        cells += [_fmt(x) for x in rec.x_hat]
        cells += [_fmt(x) for x in rec.x_corrected]
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n")


def read_trace(path: str | Path) -> dict[str, list]:
    """Read a trace CSV back into columns; empty cells become None."""
    lines = Path(path).read_text().splitlines()
    header = lines[0].split(",")
    cols: dict[str, list] = {name: [] for name in header}
    for line in lines[1:]:
        for name, cell in zip(header, line.split(",")):
            if cell == "":
                cols[name].append(None)
            elif name in ("k", "p_accepted"):
                cols[name].append(int(cell))
            else:
                cols[name].append(float(cell))
    return cols


SUMMARY_COLUMNS = ["name", "problem", "algorithm", "h", "P", "C", "v", "alpha",
                   "K", "seed", "status", "aborted_round", "abort_reason",
                   "rounds_recorded", "trace_file"]


def write_summary(path: Path, rows: list[dict]) -> None:
    lines = [",".join(SUMMARY_COLUMNS)]
    for row in sorted(rows, key=lambda r: r["name"]):
        lines.append(",".join(str(row.get(c, "")) for c in SUMMARY_COLUMNS))
    path.write_text("\n".join(lines) + "\n")


def _summary_row(spec: RunSpec, result: RunResult, trace_file: str) -> dict:
    effective_P = {"sharp": spec.P, "tvgd": 1, "spc": 2}.get(spec.algorithm, "")
    effective_v = {"sharp": _gfmt(spec.v), "tvgd": "inf", "spc": "inf"}.get(spec.algorithm, "")
    return {
        "name": spec.name, "problem": spec.problem, "algorithm": spec.algorithm,
        "h": _gfmt(spec.h), "P": effective_P, "C": spec.C, "v": effective_v,
        "alpha": _fmt(spec.alpha), "K": spec.K, "seed": spec.seed,
        "status": result.status,
        "aborted_round": "" if result.aborted_round is None else result.aborted_round,
        "abort_reason": "" if result.abort_reason is None else
                        result.abort_reason.replace(",", ";"),
        "rounds_recorded": len(result.records), "trace_file": trace_file,
    }


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------


def _execute(spec: RunSpec) -> RunResult:
    problem = build_problem(spec)
    algo = build_algorithm(spec)
    x0 = np.zeros(problem.dim) if spec.x0 is None else np.asarray(spec.x0, float)
    if x0.size == 1 and problem.dim > 1:
        x0 = np.full(problem.dim, float(x0[0]))
    return run(problem, algo, x0, spec.K)


def run_experiment(config_file: str | Path, out_dir: str | Path,
                   seed: int | None = None, quiet: bool = False,
                   jobs: int = 1) -> int:
    """Run every run the config defines; write traces, a theory report, and
    a summary.  Returns the process exit code."""
    try:
        config = load_config(config_file)
        if seed is not None:
            config["seed"] = str(seed)
        specs = expand_runs(config)
    except ConfigError as exc:
        for msg in exc.messages:
            print(f"config error: {msg}", file=sys.stderr)
        return 1
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    results: list[tuple[RunSpec, RunResult]] = []
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [(spec, pool.submit(_execute, spec)) for spec in specs]
            results = [(spec, fut.result()) for spec, fut in futures]
    else:
        results = [(spec, _execute(spec)) for spec in specs]

    rows = []
    any_aborted = False
    for spec, result in results:
        trace_file = f"trace_{spec.name}.csv"
        write_trace(out / trace_file, result, result.x0.size)
        rows.append(_summary_row(spec, result, trace_file))
        any_aborted = any_aborted or not result.completed
        if not quiet:
            tail = "" if result.completed else \
                f"  [aborted at round {result.aborted_round}: {result.abort_reason}]"
            print(f"{spec.name}: {len(result.records)} rounds -> {trace_file}{tail}")
    write_summary(out / "summary.csv", rows)
    _write_bounds(config, specs, out, quiet)
    return 2 if any_aborted else 0


def _write_bounds(config: dict[str, str], specs: list[RunSpec], out: Path,
                  quiet: bool) -> Path:
    base = config.get("name", "run")
    ref = specs[0]
    P = max(s.P for s in specs)
    C = max(s.C for s in specs)
    h = min(s.h for s in specs)
    finite_vs = [s.v for s in specs if math.isfinite(s.v) and s.algorithm == "sharp"]
    v = min(finite_vs) if finite_vs else UNBOUNDED
    problem = build_problem(replace(ref, h=h))
    report = build_theory_report(problem, P=P, C=C, v=v, alpha=ref.alpha, h=h)
    path = out / f"bounds_{base}.txt"
    path.write_text(report.to_text())
    if not quiet:
        print(f"theory report -> {path.name}")
    return path


def report_bounds(config_file: str | Path, out_dir: str | Path,
                  quiet: bool = False) -> int:
    """Write the theory report for a config without running anything."""
    try:
        config = load_config(config_file)
        specs = expand_runs(config)
    except ConfigError as exc:
        for msg in exc.messages:
            print(f"config error: {msg}", file=sys.stderr)
        return 1
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_bounds(config, specs, out, quiet)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="tvtrack",
        description="Time-varying optimization benchmark harness")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("run", "execute the runs a config defines"),
                            ("sweep", "like run, with parallel workers"),
                            ("bounds", "write the theory report only")):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="path to a key = value config file")
        cmd.add_argument("--out", default=".", help="output directory")
        cmd.add_argument("--quiet", action="store_true", help="suppress progress output")
        if name != "bounds":
            cmd.add_argument("--seed", type=int, default=None,
                             help="override the config's data seed")
        if name == "sweep":
            cmd.add_argument("--jobs", type=int, default=4,
                             help="parallel runs (default 4)")
    args = parser.parse_args(argv)

    if args.command == "bounds":
        return report_bounds(args.config, args.out, quiet=args.quiet)
    jobs = getattr(args, "jobs", 1)
    if jobs < 1:
        print("config error: --jobs must be >= 1", file=sys.stderr)
        return 1
    return run_experiment(args.config, args.out, seed=args.seed,
                          quiet=args.quiet, jobs=jobs)


if __name__ == "__main__":
    sys.exit(main())
