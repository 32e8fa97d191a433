import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dirichlet_recurrence import Rectangle, characters_mod  # noqa: E402


@pytest.fixture(scope="session")
def rect():
    return Rectangle(0.6, 0.8, 1.0)


@pytest.fixture(scope="session")
def chi4():
    return characters_mod(4)[1]


@pytest.fixture(scope="session")
def chi3():
    return characters_mod(3)[1]


@pytest.fixture(scope="session")
def principal():
    return characters_mod(4)[0]


_CRITERIA = {}


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        ok = _CRITERIA.get(marker, True)
        _CRITERIA[marker] = ok and report.outcome == "passed"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        outcome.get_result().criterion = mark.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        status = "PASS" if _CRITERIA[n] else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}")
