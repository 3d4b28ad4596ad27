import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import make_ctx  # noqa: E402

from gsp4_lfactors.notation import Scope  # noqa: E402


@pytest.fixture
def ctx():
    return make_ctx(sigma=None, chi=None, xi=2, r="ramified")


@pytest.fixture
def scope(ctx):
    return Scope(ctx)


_ACCEPTANCE: dict[int, bool] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.partition("test_acceptance.py::")[2]
    if not name.startswith("test_criterion_"):
        return
    n = int(name.split("_")[2])
    if report.failed or (report.when == "call" and n not in _ACCEPTANCE):
        _ACCEPTANCE[n] = _ACCEPTANCE.get(n, True) and not report.failed


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        status = {True: "PASS", False: "FAIL"}.get(_ACCEPTANCE.get(n), "NOT RUN")
        terminalreporter.write_line(f"criterion {n}: {status}  {title}")
