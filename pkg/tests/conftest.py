from __future__ import annotations

import random

import pytest

from cohinv.gfp import enumerate_subspaces
from cohinv.lattice import GroupSpec

_CRITERIA: dict[str, str] = {}


def sweep(shape: tuple[str, ...], p: int, max_n: int, min_n: int = 1):
    """All specs ``shape^n / mu`` for ``min_n <= n <= max_n``; R runs over every subspace."""
    per = {"E6": 1, "E7": 1, "D6": 2, "A1": 1}
    width = sum(per[t] for t in shape)
    for n in range(min_n, max_n + 1):
        for sub in enumerate_subspaces(p, width * n):
            yield GroupSpec(shape * n, sub.rows)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid or "::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda s: int(s.split("_")[2])):
        mark = "PASS" if _CRITERIA[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {name}")
