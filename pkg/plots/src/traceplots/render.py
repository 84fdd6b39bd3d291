"""Render benchmark traces into the three experiment figure styles.

Input is the harness's CSV interface only: ``trace_*.csv`` files with the
schema ``k,t,p_accepted,step_norm,grad_norm_pred,tracking_error,f_gap,...``
and, when available, the ``summary.csv`` written next to them (used for
series labels and panel grouping; otherwise parameters are recovered from
the trace file names).

Figure styles:

* ``experiment1`` -- gradient norm at the prediction vs time, log y-axis,
  one panel per sampling period (series per order) and one panel per
  velocity threshold (series per correction count), whichever axes vary.
* ``experiment2`` -- tracking error vs time, log y-axis, one panel, one
  series per algorithm.
* ``experiment3`` -- tracking error vs time, log y-axis, one panel,
  proposed method against the gradient-only baseline.

Empty cells (metrics the run could not produce) become NaN, which breaks
the plotted line instead of dropping to zero.  Series arrays are the CSV
values verbatim, in file order; nothing is rescaled or reordered.
"""

from __future__ import annotations

import argparse
import glob as globlib
import re
import sys
import warnings
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

REQUIRED_COLUMNS = ["k", "t", "p_accepted", "step_norm", "grad_norm_pred",
                    "tracking_error", "f_gap"]


class SchemaError(ValueError):
    """A trace file does not match the expected CSV schema."""


def parse_trace(path: str | Path) -> dict[str, np.ndarray]:
    """Read one trace CSV into float columns; empty cells become NaN."""
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise SchemaError(f"{path}: empty file, expected a header row")
    header = lines[0].split(",")
    missing = [c for c in REQUIRED_COLUMNS if c not in header]
    if missing:
        raise SchemaError(f"{path}: missing required columns {missing}; "
                          f"found {header}")
    columns: dict[str, list[float]] = {name: [] for name in header}
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != len(header):
            raise SchemaError(f"{path}: line {lineno} has {len(cells)} cells, "
                              f"header has {len(header)}")
        for name, cell in zip(header, cells):
            columns[name].append(float("nan") if cell == "" else float(cell))
    return {name: np.asarray(vals, dtype=np.float64) for name, vals in columns.items()}


def series_from_trace(columns: dict[str, np.ndarray], ycol: str) -> tuple[np.ndarray, np.ndarray]:
    """Extract (t, y) backing arrays for one series, values verbatim."""
    if ycol not in columns:
        raise SchemaError(f"missing required columns ['{ycol}']")
    return columns["t"], columns[ycol]


# ---------------------------------------------------------------------------
# Run parameters for labels and grouping
# ---------------------------------------------------------------------------

_NAME_SEGMENT = re.compile(r"^(h|P|C|v)(.+)$")


def load_params(trace_paths: list[Path]) -> dict[Path, dict[str, str]]:
    """Map each trace file to its run parameters.

    Prefers the ``summary.csv`` sitting next to the traces; falls back to
    the name-segment convention ``trace_<base>[_<algo>][_hX][_PX][_CX][_vX].csv``.
    """
    params: dict[Path, dict[str, str]] = {}
    summaries: dict[Path, dict[str, dict[str, str]]] = {}
    for path in trace_paths:
        table = summaries.get(path.parent)
        if table is None:
            table = _read_summary(path.parent / "summary.csv")
            summaries[path.parent] = table
        row = table.get(path.name)
        params[path] = row if row is not None else _params_from_name(path.name)
    return params


def _read_summary(path: Path) -> dict[str, dict[str, str]]:
    if not path.exists():
        return {}
    lines = path.read_text().splitlines()
    if not lines:
        return {}
    header = lines[0].split(",")
    out = {}
    for line in lines[1:]:
        row = dict(zip(header, line.split(",")))
        if "trace_file" in row:
            out[row["trace_file"]] = row
    return out


def _params_from_name(filename: str) -> dict[str, str]:
    stem = filename.removesuffix(".csv")
    stem = stem.removeprefix("trace_")
    out: dict[str, str] = {"name": stem}
    for segment in stem.split("_"):
        if segment in ("sharp", "tvgd", "spc", "gtt"):
            out["algorithm"] = segment
            continue
        match = _NAME_SEGMENT.match(segment)
        if match:
            out[match.group(1)] = match.group(2)
    return out


def _label(row: dict[str, str], keys: list[str]) -> str:
    parts = []
    for key in keys:
        value = row.get(key, "")
        if value:
            parts.append(value.upper() if key == "algorithm" else f"{key}={value}")
    return ", ".join(parts) if parts else row.get("name", "run")


def _varying(rows: list[dict[str, str]], keys: list[str]) -> list[str]:
    out = [k for k in keys
           if len({row.get(k, "") for row in rows}) > 1]
    if "algorithm" in out:
        # the baselines pin their own order and threshold, so a parameter
        # distinguishes series only if it varies within some one algorithm
        by_algo: dict[str, list[dict[str, str]]] = {}
        for row in rows:
            by_algo.setdefault(row.get("algorithm", ""), []).append(row)
        out = ["algorithm"] + [
            k for k in out if k != "algorithm"
            and any(len({r.get(k, "") for r in group}) > 1
                    for group in by_algo.values())]
    return out


# ---------------------------------------------------------------------------
# Figure building
# ---------------------------------------------------------------------------


def _panel_groups_experiment1(items):
    """Panels for the parameter-sweep style: by sampling period when the
    order varies inside the group, by threshold when the correction count
    varies."""
    panels = []
    for key, series_key in (("h", "P"), ("v", "C")):
        groups: dict[str, list] = {}
        for item in items:
            groups.setdefault(item["params"].get(key, ""), []).append(item)
        for value in sorted(groups, key=_numeric_sort):
            group = groups[value]
            if len({it["params"].get(series_key, "") for it in group}) > 1:
                panels.append((f"{key}={value}", series_key, group))
    if not panels:
        panels.append(("all runs", "name", items))
    return panels


def _numeric_sort(text: str):
    try:
        return (0, float(text))
    except ValueError:
        return (1, text)


FIGURE_SPECS = {
    "experiment1": dict(ycol="grad_norm_pred", ylabel="gradient norm at prediction",
                        panels=_panel_groups_experiment1),
    "experiment2": dict(ycol="tracking_error", ylabel="tracking error",
                        panels=lambda items: [("algorithms", "algorithm", items)]),
    "experiment3": dict(ycol="tracking_error", ylabel="tracking error",
                        panels=lambda items: [("algorithms", "algorithm", items)]),
}


def build_figures(trace_files, figure_spec: str):
    """Build matplotlib figures plus their backing series for a trace set.

    Returns a list of (figure, panel_name, series) where ``series`` maps
    label -> (t, y) arrays exactly as parsed from the CSV files.
    """
    if figure_spec not in FIGURE_SPECS:
        raise ValueError(f"unknown figure spec {figure_spec!r}; "
                         f"choose from {sorted(FIGURE_SPECS)}")
    spec = FIGURE_SPECS[figure_spec]
    paths = [Path(p) for p in trace_files]
    if not paths:
        warnings.warn(f"no trace files given for {figure_spec}; nothing to render")
        return []
    params = load_params(paths)
    items = []
    for path in paths:
        columns = parse_trace(path)
        t, y = series_from_trace(columns, spec["ycol"])
        items.append({"path": path, "params": params[path], "t": t, "y": y})

    figures = []
    for panel_name, series_key, group in spec["panels"](items):
        rows = [it["params"] for it in group]
        label_keys = _varying(rows, ["algorithm", "h", "P", "C", "v"]) or [series_key]
        fig, ax = plt.subplots(figsize=(6.4, 4.2))
        series: dict[str, tuple[np.ndarray, np.ndarray]] = {}
        ordered = sorted(group, key=lambda it: _numeric_sort(it["params"].get(series_key, "")))
        for item in ordered:
            label = _label(item["params"], label_keys)
            ax.plot(item["t"], item["y"], label=label, linewidth=1.2)
            series[label] = (item["t"], item["y"])
        ax.set_yscale("log")
        ax.set_xlabel("t")
        ax.set_ylabel(spec["ylabel"])
        ax.set_title(f"{figure_spec}: {panel_name}")
        ax.legend(fontsize=8)
        ax.grid(True, which="both", alpha=0.3)
        fig.tight_layout()
        figures.append((fig, panel_name, series))
    return figures


def render(trace_files, figure_spec: str, out_dir: str | Path) -> list[Path]:
    """Render one PNG and one SVG per panel; returns the written paths."""
    figures = build_figures(trace_files, figure_spec)
    if not figures:
        return []
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for fig, panel_name, _ in figures:
        safe = re.sub(r"[^A-Za-z0-9.=_-]+", "_", panel_name)
        for ext in ("png", "svg"):
            path = out / f"{figure_spec}_{safe}.{ext}"
            fig.savefig(path)
            written.append(path)
        plt.close(fig)
    return written


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render benchmark trace CSVs into experiment-style figures")
    parser.add_argument("--traces", required=True, nargs="+",
                        help="trace files or globs (e.g. 'out/trace_*.csv')")
    parser.add_argument("--spec", required=True, choices=sorted(FIGURE_SPECS),
                        help="figure style")
    parser.add_argument("--out", required=True, help="output directory")
    args = parser.parse_args(argv)

    files: list[str] = []
    for pattern in args.traces:
        matched = sorted(globlib.glob(pattern))
        files.extend(matched if matched else ([pattern] if Path(pattern).exists() else []))
    try:
        written = render(files, args.spec, args.out)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
