import subprocess
import sys

import pytest


def _harness(config_text: str, out_dir) -> None:
    """Produce traces through the harness CLI, the package's only interface
    to the solver."""
    cfg = out_dir / "config.cfg"
    cfg.write_text(config_text)
    proc = subprocess.run(
        [sys.executable, "-m", "tvtrack", "run", "--config", str(cfg),
         "--out", str(out_dir), "--quiet"],
        capture_output=True, text=True)
    if proc.returncode != 0 and "No module named" in proc.stderr:
        pytest.skip("the tvtrack harness CLI is not installed in this environment")
    assert proc.returncode == 0, proc.stderr


@pytest.fixture(scope="session")
def experiment1_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("exp1")
    _harness("preset = experiment1\n", out)
    return out


@pytest.fixture(scope="session")
def experiment1b_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("exp1b")
    _harness("preset = experiment1b\n", out)
    return out


@pytest.fixture(scope="session")
def experiment2_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("exp2")
    _harness("preset = experiment2\n", out)
    return out


@pytest.fixture(scope="session")
def experiment3_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("exp3")
    _harness("preset = experiment3\n", out)
    return out
