import json
import os
from pathlib import Path

import pytest

from inflecta.census import census_report

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def census3():
    return census_report(3)


@pytest.fixture(scope="session")
def census5():
    return census_report(5)


def shipped_fixtures():
    """Names of the committed fixture files (csv + expected json)."""
    return sorted(p.stem for p in FIXTURE_DIR.glob("*.json") if not p.stem.startswith("random-"))


def load_expected(name):
    with open(FIXTURE_DIR / f"{name}.json") as fh:
        return json.load(fh)


def random_seed():
    return int(os.environ.get("INFLECTA_SEED", "20240917"))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
