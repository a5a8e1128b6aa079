import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from primefreq.primes import PrimeTable  # noqa: E402


@pytest.fixture
def table():
    return PrimeTable()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.LINES):
        terminalreporter.write_line(mod.LINES[k])
