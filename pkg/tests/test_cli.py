import math

import pytest

import tvtrack as tv
from tvtrack.cli import (ConfigError, RunSpec, expand_runs, load_config, main,
                         parse_config_text, read_trace, run_experiment,
                         trace_header, write_trace)


def write_config(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return path


SINGLE_RUN = """
# a single short run
name = demo
problem = target_tracking
algorithm = sharp
h = 0.1
P = 3
C = 1
v = 10
alpha = 0.5
K = 40
x0 = 0,0
"""


class TestConfigParsing:
    def test_key_values_and_comments(self):
        cfg = parse_config_text("a = 1  # trailing\n\n# full line\n b = two words \n")
        assert cfg == {"a": "1", "b": "two words"}

    def test_diagnostics_collect_line_numbers(self):
        with pytest.raises(ConfigError) as exc:
            parse_config_text("a = 1\nbroken line\na = 2\n")
        joined = "\n".join(exc.value.messages)
        assert "line 2" in joined
        assert "duplicate" in joined

    def test_unknown_preset(self, tmp_path):
        path = write_config(tmp_path, "preset = experiment9\n")
        with pytest.raises(ConfigError):
            load_config(path)

    def test_preset_keys_can_be_overridden(self, tmp_path):
        path = write_config(tmp_path, "preset = experiment2\nK = 10\n")
        cfg = load_config(path)
        assert cfg["K"] == "10"
        assert cfg["problem"] == "target_tracking"
        assert cfg["name"] == "experiment2"

    def test_expand_single(self, tmp_path):
        specs = expand_runs(load_config(write_config(tmp_path, SINGLE_RUN)))
        assert len(specs) == 1
        assert specs[0] == RunSpec(name="demo", problem="target_tracking",
                                   algorithm="sharp", h=0.1, P=3, C=1, v=10.0,
                                   alpha=0.5, K=40, x0=(0.0, 0.0))

    def test_expand_experiment1_grid(self, tmp_path):
        specs = expand_runs(load_config(write_config(tmp_path, "preset = experiment1\n")))
        assert len(specs) == 12
        names = {s.name for s in specs}
        assert "experiment1_h1_P7" in names
        assert "experiment1_h0.01_P1" in names
        # horizon = 16 resolves per sampling period
        by_h = {s.h: s.K for s in specs}
        assert by_h[1.0] == 16 and by_h[0.1] == 160 and by_h[0.01] == 1600

    def test_baselines_do_not_multiply_over_order_axis(self, tmp_path):
        path = write_config(tmp_path, """
problem = target_tracking
algorithm = sharp,tvgd
h = 0.1
P = 1,2,4
C = 1
v = 10
alpha = 0.5
K = 10
""")
        specs = expand_runs(load_config(path))
        assert len([s for s in specs if s.algorithm == "sharp"]) == 3
        assert len([s for s in specs if s.algorithm == "tvgd"]) == 1

    def test_unbounded_threshold_spellings(self, tmp_path):
        for spelling in ("unbounded", "inf", "Infinity"):
            path = write_config(tmp_path, SINGLE_RUN.replace("v = 10", f"v = {spelling}"),
                                name=f"{spelling}.cfg")
            specs = expand_runs(load_config(path))
            assert math.isinf(specs[0].v)

    def test_field_level_diagnostics(self, tmp_path):
        path = write_config(tmp_path, """
problem = nosuch
algorithm = sharp
h = fast
P = 0
C = 1
v = -3
alpha = 0.5
K = 10
banana = 1
""")
        with pytest.raises(ConfigError) as exc:
            expand_runs(load_config(path))
        joined = "\n".join(exc.value.messages)
        assert "problem:" in joined
        assert "h:" in joined
        assert "banana" in joined

    def test_invalid_solver_parameters_are_reported(self, tmp_path):
        path = write_config(tmp_path, SINGLE_RUN.replace("P = 3", "P = 31"))
        with pytest.raises(ConfigError):
            expand_runs(load_config(path))


class TestTraceFiles:
    def test_round_trip_exact(self, tmp_path, target):
        res = tv.run(target, tv.Sharp(tv.SolverConfig(h=0.1, P=3, v=10.0, alpha=0.5, C=1)),
                     [0.0, 0.0], 30)
        path = tmp_path / "trace.csv"
        write_trace(path, res, 2)
        cols = read_trace(path)
        assert list(cols) == trace_header(2)
        for i, rec in enumerate(res.records):
            assert cols["k"][i] == rec.k
            assert cols["t"][i] == rec.t
            assert cols["p_accepted"][i] == rec.p_accepted
            assert cols["step_norm"][i] == rec.step_norm
            assert cols["grad_norm_pred"][i] == rec.grad_norm_at_prediction
            assert cols["tracking_error"][i] == rec.tracking_error
            assert cols["f_gap"][i] == rec.f_gap
            assert cols["x_hat_0"][i] == rec.x_hat[0]
            assert cols["x_corr_1"][i] == rec.x_corrected[1]

    def test_absent_metrics_serialize_empty(self, tmp_path):
        prob = tv.TimeVaryingProblem(name="anon", dim=1,
                                     value=lambda x, t: float(x @ x),
                                     gradient=lambda x, t: 2 * x)
        res = tv.run(prob, tv.Tvgd(h=0.1, alpha=0.25, C=1), [1.0], 5)
        path = tmp_path / "trace.csv"
        write_trace(path, res, 1)
        raw = path.read_text().splitlines()
        assert raw[1].split(",")[5] == ""  # tracking_error cell
        cols = read_trace(path)
        assert cols["tracking_error"] == [None] * 5
        assert cols["f_gap"] == [None] * 5


class TestRunExperiment:
    def test_single_run_outputs(self, tmp_path):
        cfg = write_config(tmp_path, SINGLE_RUN)
        out = tmp_path / "out"
        assert run_experiment(cfg, out, quiet=True) == 0
        assert (out / "trace_demo.csv").exists()
        assert (out / "summary.csv").exists()
        assert (out / "bounds_demo.txt").exists()
        summary = (out / "summary.csv").read_text().splitlines()
        assert summary[0].startswith("name,problem,algorithm")
        assert summary[1].startswith("demo,target_tracking,sharp,0.1,3,1,10,")

    def test_byte_identical_reruns(self, tmp_path):
        cfg = write_config(tmp_path, "preset = experiment3\nK = 40\n")
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert run_experiment(cfg, out1, quiet=True) == 0
        assert run_experiment(cfg, out2, quiet=True) == 0
        files1 = sorted(p.name for p in out1.iterdir())
        assert files1 == sorted(p.name for p in out2.iterdir())
        for name in files1:
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    def test_parallel_sweep_matches_sequential(self, tmp_path):
        cfg = write_config(tmp_path, """
name = grid
problem = target_tracking
algorithm = sharp
h = 0.2,0.1
P = 1,3
C = 1
v = unbounded
alpha = 0.5
K = 50
""")
        seq, par = tmp_path / "seq", tmp_path / "par"
        assert run_experiment(cfg, seq, quiet=True, jobs=1) == 0
        assert run_experiment(cfg, par, quiet=True, jobs=3) == 0
        for p in sorted(seq.iterdir()):
            assert p.read_bytes() == (par / p.name).read_bytes()

    def test_experiment1_preset_writes_twelve_traces(self, tmp_path):
        cfg = write_config(tmp_path, "preset = experiment1\n")
        out = tmp_path / "out"
        assert run_experiment(cfg, out, quiet=True) == 0
        traces = sorted(out.glob("trace_*.csv"))
        assert len(traces) == 12

    def test_seed_override_changes_data(self, tmp_path):
        cfg = write_config(tmp_path, "preset = experiment3\nK = 20\n")
        out1, out2 = tmp_path / "s0", tmp_path / "s1"
        assert run_experiment(cfg, out1, quiet=True) == 0
        assert run_experiment(cfg, out2, quiet=True, seed=99) == 0
        t1 = (out1 / "trace_experiment3_sharp.csv").read_bytes()
        t2 = (out2 / "trace_experiment3_sharp.csv").read_bytes()
        assert t1 != t2
        assert ",99," in (out2 / "summary.csv").read_text()

    def test_config_error_exit_code(self, tmp_path, capsys):
        cfg = write_config(tmp_path, "problem = nosuch\nh = 0.1\nalpha = 0.5\nK = 5\n")
        assert run_experiment(cfg, tmp_path / "out", quiet=True) == 1
        err = capsys.readouterr().err
        assert "config error" in err and "problem:" in err

    def test_aborted_run_exit_code(self, tmp_path):
        cfg = write_config(tmp_path, """
name = diverge
problem = target_tracking
algorithm = sharp
h = 0.1
P = 2
C = 1
v = unbounded
alpha = 1e8
K = 60
x0 = 1,1
""")
        out = tmp_path / "out"
        assert run_experiment(cfg, out, quiet=True) == 2
        summary = (out / "summary.csv").read_text()
        assert "aborted" in summary
        trace = (out / "trace_diverge.csv").read_text().splitlines()
        assert 1 < len(trace) < 61  # partial trace retained


class TestBoundsCommand:
    def test_experiment1_report_values(self, tmp_path):
        cfg = write_config(tmp_path, "preset = experiment1\n")
        out = tmp_path / "out"
        assert main(["bounds", "--config", str(cfg), "--out", str(out), "--quiet"]) == 0
        text = (out / "bounds_experiment1.txt").read_text()
        assert "C_strongly_convex" in text
        c_line = next(ln for ln in text.splitlines() if ln.startswith("C_strongly_convex"))
        assert c_line.split()[1] == "27"
        v_line = next(ln for ln in text.splitlines() if ln.startswith("v_min"))
        assert float(v_line.split()[1]) == pytest.approx(16.4, abs=0.5)

    def test_experiment2_report_values(self, tmp_path, target):
        cfg = write_config(tmp_path, "preset = experiment2\n")
        out = tmp_path / "out"
        assert main(["bounds", "--config", str(cfg), "--out", str(out), "--quiet"]) == 0
        text = (out / "bounds_experiment2.txt").read_text()
        theta_line = next(ln for ln in text.splitlines() if ln.startswith("theta1"))
        assert float(theta_line.split()[1]) == 0.0
        c_line = next(ln for ln in text.splitlines() if ln.startswith("C_strongly_convex"))
        assert c_line.split()[1] == "1"
        v_line = next(ln for ln in text.splitlines() if ln.startswith("v_min"))
        assert float(v_line.split()[1]) == pytest.approx(target.sigma_bound(1), rel=1e-3)

    def test_missing_constants_marked_unavailable(self, tmp_path):
        cfg = write_config(tmp_path, "preset = experiment3\n")
        out = tmp_path / "out"
        assert main(["bounds", "--config", str(cfg), "--out", str(out), "--quiet"]) == 0
        text = (out / "bounds_experiment3.txt").read_text()
        theta_line = next(ln for ln in text.splitlines() if ln.startswith("theta1"))
        assert "unavailable" in theta_line
        # the non-convex limit needs L01, which the data-resampling problem
        # deliberately does not declare
        nc_line = next(ln for ln in text.splitlines() if ln.startswith("avg_grad_norm_limit"))
        assert "unavailable" in nc_line

    def test_cli_bad_config_exit_one(self, tmp_path):
        cfg = write_config(tmp_path, "no equals sign here\n")
        assert main(["bounds", "--config", str(cfg), "--out", str(tmp_path)]) == 1
