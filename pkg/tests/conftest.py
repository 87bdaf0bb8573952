import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from treecolor.enumerator import generate_levels  # noqa: E402

_ACCEPTANCE: dict[str, str] = {}


@pytest.fixture(scope="session")
def levels():
    """Every triangulation with 4 <= n <= 10, keyed by n."""
    return {n: graphs for n, graphs in generate_levels(10)}


@pytest.fixture(scope="session")
def all_small(levels):
    return [t for n in sorted(levels) for t in levels[n]]


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid or "::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::test_criterion_", 1)[1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[name] = "PASS" if report.outcome == "passed" else report.outcome.upper()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split("_", 1)[0])):
        num, _, label = name.partition("_")
        status = "PASS" if _ACCEPTANCE[name] == "PASS" else "FAIL"
        terminalreporter.write_line(f"criterion {int(num):2d} {label.replace('_', ' ')}: {status}")
