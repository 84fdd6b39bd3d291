import math
import warnings

import numpy as np
import pytest

from traceplots import (SchemaError, build_figures, parse_trace, render,
                        series_from_trace)


def csv_cells(path, column):
    """Independent reference parse: raw text cells of one column."""
    lines = path.read_text().splitlines()
    idx = lines[0].split(",").index(column)
    return [line.split(",")[idx] for line in lines[1:]]


class TestExperimentStyles:
    def test_experiment1_renders_panels_per_period(self, experiment1_dir, tmp_path):
        traces = sorted(experiment1_dir.glob("trace_*.csv"))
        assert len(traces) == 12
        written = render(traces, "experiment1", tmp_path)
        names = sorted(p.name for p in written)
        assert len(written) == 6  # 3 panels x {png, svg}
        assert "experiment1_h=0.01.png" in names
        assert "experiment1_h=1.svg" in names

    def test_experiment1b_renders_panels_per_threshold(self, experiment1b_dir, tmp_path):
        traces = sorted(experiment1b_dir.glob("trace_*.csv"))
        assert len(traces) == 9
        written = render(traces, "experiment1", tmp_path)
        assert len(written) == 6
        assert any("v=20" in p.name for p in written)

    def test_experiment2_single_comparison_figure(self, experiment2_dir, tmp_path):
        traces = sorted(experiment2_dir.glob("trace_*.csv"))
        assert len(traces) == 4
        written = render(traces, "experiment2", tmp_path)
        assert sorted(p.suffix for p in written) == [".png", ".svg"]
        figures = build_figures(traces, "experiment2")
        labels = set(figures[0][2])
        assert labels == {"SHARP", "TVGD", "SPC", "GTT"}

    def test_experiment3_single_comparison_figure(self, experiment3_dir, tmp_path):
        traces = sorted(experiment3_dir.glob("trace_*.csv"))
        assert len(traces) == 2
        written = render(traces, "experiment3", tmp_path)
        assert len(written) == 2
        figures = build_figures(traces, "experiment3")
        assert set(figures[0][2]) == {"SHARP", "TVGD"}


class TestBackingData:
    def test_series_equal_csv_values_exactly(self, experiment2_dir):
        trace = experiment2_dir / "trace_experiment2_sharp.csv"
        figures = build_figures([trace], "experiment2")
        (t, y) = next(iter(figures[0][2].values()))
        t_ref = [float(c) for c in csv_cells(trace, "t")]
        y_ref = [float(c) for c in csv_cells(trace, "tracking_error")]
        assert t.tolist() == t_ref
        assert y.tolist() == y_ref

    def test_axes_hold_untouched_arrays(self, experiment3_dir):
        traces = sorted(experiment3_dir.glob("trace_*.csv"))
        figures = build_figures(traces, "experiment3")
        fig, _, series = figures[0]
        ax = fig.axes[0]
        by_label = {line.get_label(): line for line in ax.get_lines()}
        for label, (t, y) in series.items():
            line = by_label[label]
            assert np.array_equal(line.get_xdata(), t)
            assert np.array_equal(line.get_ydata(), y, equal_nan=True)

    def test_absent_metrics_break_lines(self, tmp_path):
        header = "k,t,p_accepted,step_norm,grad_norm_pred,tracking_error,f_gap,x_hat_0,x_corr_0"
        rows = ["1,0.1,1,0,1,0.5,0.25,0,0",
                "2,0.2,1,0,1,,,0,0",
                "3,0.3,1,0,1,0.125,0.015,0,0"]
        trace = tmp_path / "trace_gap.csv"
        trace.write_text("\n".join([header] + rows) + "\n")
        columns = parse_trace(trace)
        t, y = series_from_trace(columns, "tracking_error")
        assert y[0] == 0.5 and y[2] == 0.125
        assert math.isnan(y[1])
        assert not np.any(y == 0.0)


class TestErrorsAndEdges:
    def test_empty_input_is_noop_with_warning(self, tmp_path):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            written = render([], "experiment2", tmp_path)
        assert written == []
        assert any("nothing to render" in str(w.message) for w in caught)
        assert list(tmp_path.iterdir()) == []

    def test_schema_mismatch_names_columns(self, tmp_path):
        bad = tmp_path / "trace_bad.csv"
        bad.write_text("k,t,step_norm\n1,0.1,0\n")
        with pytest.raises(SchemaError) as exc:
            build_figures([bad], "experiment2")
        message = str(exc.value)
        assert "tracking_error" in message and "grad_norm_pred" in message

    def test_ragged_row_is_diagnosed(self, tmp_path):
        header = "k,t,p_accepted,step_norm,grad_norm_pred,tracking_error,f_gap"
        bad = tmp_path / "trace_ragged.csv"
        bad.write_text(header + "\n1,0.1,1,0\n")
        with pytest.raises(SchemaError) as exc:
            parse_trace(bad)
        assert "line 2" in str(exc.value)

    def test_unknown_spec_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            build_figures([], "experiment9")

    def test_filename_fallback_without_summary(self, tmp_path, experiment2_dir):
        # copy one trace away from its summary.csv
        src = experiment2_dir / "trace_experiment2_sharp.csv"
        dst = tmp_path / "trace_demo_sharp_h0.1_P7.csv"
        dst.write_text(src.read_text())
        figures = build_figures([dst], "experiment2")
        assert set(figures[0][2]) == {"SHARP"}
