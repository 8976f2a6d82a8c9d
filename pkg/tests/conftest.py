from __future__ import annotations

import sys
from collections import defaultdict
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import random_trial  # noqa: E402

from tusq.datasets import running_example  # noqa: E402
from tusq.kernels import BACKENDS, numba_available  # noqa: E402

N_TRIALS = 120

_criteria: dict[str, list[str]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id): acceptance criterion covered by the test")
    config.addinivalue_line("markers", "slow: takes more than a few seconds")


def pytest_runtest_logreport(report):
    marks = getattr(report, "criterion_ids", None)
    if not marks:
        return
    if report.when == "call" or report.outcome != "passed":
        for cid in marks:
            _criteria[cid].append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    report.criterion_ids = [m.args[0] for m in item.iter_markers("criterion")]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")

    def key(cid: str):
        num = "".join(c for c in cid if c.isdigit())
        return int(num or 0), cid

    for cid in sorted(_criteria, key=key):
        ok = all(o == "passed" for o in _criteria[cid])
        terminalreporter.write_line(f"criterion {cid}: {'PASS' if ok else 'FAIL'}")


@pytest.fixture(scope="session")
def example():
    return running_example()


@pytest.fixture(scope="session")
def trials():
    return [random_trial(seed) for seed in range(N_TRIALS)]


def available_backends():
    return [b for b in BACKENDS if b != "numba" or numba_available()]


@pytest.fixture(params=available_backends())
def backend(request):
    return request.param
