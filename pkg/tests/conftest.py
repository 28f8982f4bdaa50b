import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")

DATA_DIR = Path(__file__).resolve().parents[1] / "data"

_criteria = []


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def criterion():
    """Record an acceptance criterion outcome, then assert it."""

    def record(name, passed, detail=""):
        _criteria.append((name, bool(passed), detail))
        assert passed, f"{name}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _criteria:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
