import re

import pytest

from taskrep import bimodal, new_pmf

_ACCEPTANCE = {}


@pytest.fixture
def motivating():
    return new_pmf([2, 7], [0.9, 0.1])


@pytest.fixture
def x_l3():
    return new_pmf([4, 8, 20], [0.6, 0.3, 0.1])


@pytest.fixture
def x_eg():
    return bimodal(6, 20, 0.8)


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[key] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), outcome in sorted(_ACCEPTANCE.items()):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d} {name:<40s} {verdict}")
