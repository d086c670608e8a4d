import re
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"

_criteria: dict[int, tuple[str, float]] = {}
_setup: dict[int, float] = {}


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = re.match(r"test_criterion_(\d+)", item.name)
    if not m or rep.when not in ("setup", "call"):
        return
    k = int(m.group(1))
    if rep.when == "setup":
        # fixture time (for example the shared fans) counts toward the criterion
        _setup[k] = rep.duration
        if rep.passed:
            return
    _criteria[k] = ("PASS" if rep.passed else "FAIL", rep.duration + _setup.get(k, 0.0))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_criteria):
        status, secs = _criteria[k]
        terminalreporter.write_line(f"criterion {k:2d}: {status}  ({secs:.2f} s)")


def cli(*args: str) -> list[str]:
    return [sys.executable, "-m", "loctrop.cli", *args]
