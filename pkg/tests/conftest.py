from pathlib import Path

import pytest

from macposet import read_poset

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"

FIXTURES = {
    "A": "two-segments",
    "B": "two-triangles",
    "C": "exmwc",
    "D": "pentagon",
    "E": "two-points",
    "RP2": "rp2",
}


def load(key: str):
    return read_poset(FIXTURE_DIR / f"{FIXTURES.get(key, key)}.sp")


@pytest.fixture(scope="session")
def fix():
    return {k: load(k) for k in FIXTURES}


@pytest.fixture(params=sorted(FIXTURES))
def fixture_poset(request):
    return load(request.param)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
