import shutil
import subprocess
import sys

import pytest


def run_producer(args, cwd):
    """Invoke the modeling CLI through its public command-line interface."""
    exe = shutil.which("vbragg")
    cmd = [exe] + args if exe else [sys.executable, "-m", "vbragg.cli"] + args
    result = subprocess.run(cmd, cwd=cwd, capture_output=True, text=True)
    assert result.returncode == 0, result.stderr
    return result.stdout


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    """Reference outputs produced once through the documented CLI."""
    root = tmp_path_factory.mktemp("producer_outputs")
    run_producer(["farfield", "--out", str(root / "farfield.csv")], root)
    run_producer(["farfield", "--n-in", "0",
                  "--out", str(root / "zeros.csv")], root)
    run_producer(["feasibility", "--out", str(root / "feasibility.csv")], root)
    run_producer(["budget", "--out", str(root / "budget.json")], root)
    run_producer(["sweep", "--param", "pump.sites", "--values", "19,21,23",
                  "--out", str(root / "sweep")], root)
    return root
