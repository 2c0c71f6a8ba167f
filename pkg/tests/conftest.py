import csv
from pathlib import Path

import pytest

from jacobladder.ladder import build_ladder

DATA = Path(__file__).resolve().parents[1] / "src" / "jacobladder" / "data"


def read_fixture(name):
    with (DATA / name).open(newline="") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture(scope="session")
def ladder1():
    """First-order table whose image covers t up to about 2700."""
    return build_ladder(1, 10.0, 3000.0)


@pytest.fixture(scope="session")
def ladder1_wide():
    """First-order table whose image covers [10, 11700]."""
    return build_ladder(1, 10.0, 12800.0)


@pytest.fixture(scope="session")
def ladder2():
    """Second-order table whose image covers [10, 11900]."""
    return build_ladder(2, 10.0, 7000.0)


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}
ACCEPTANCE_COUNT = 10


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, ACCEPTANCE_COUNT + 1):
        if n in ACCEPTANCE:
            ok, detail = ACCEPTANCE[n]
            terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        else:
            terminalreporter.write_line(f"criterion {n:2d}: NOT RUN")
