import json
import subprocess
import sys
import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def run_cli(*args, timeout=300):
    """Run the command line tool in a fresh interpreter."""
    return subprocess.run(
        [sys.executable, "-m", "semidirect", *args], capture_output=True, text=True, timeout=timeout
    )


@pytest.fixture(scope="session")
def verify_all_runs():
    """Two independent runs of `verify all --seed 42` at the default 1000 trials."""
    runs = []
    for _ in range(2):
        t0 = time.perf_counter()
        proc = run_cli("verify", "all", "--seed", "42")
        runs.append((proc, time.perf_counter() - t0))
    return runs


@pytest.fixture(scope="session")
def verify_all_report(verify_all_runs):
    proc, _ = verify_all_runs[0]
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)


@pytest.fixture
def acceptance_line():
    def emit(number, title, ok, detail=""):
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
