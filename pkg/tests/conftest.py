import sys
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

import criteria  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ROOT = Path(__file__).resolve().parent.parent
SEGMENT = [(F(1, 3), F(2, 3)), (F(1, 2), F(1, 2))]


@pytest.fixture
def segment():
    return list(SEGMENT)


@pytest.fixture
def scenario_dir():
    return ROOT / "scenarios"


def pytest_terminal_summary(terminalreporter):
    if not criteria.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(criteria.LINES):
        terminalreporter.write_line(criteria.LINES[k])
