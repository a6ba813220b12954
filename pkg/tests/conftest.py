import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ggl.arith import ArithTables, sieve  # noqa: E402


@pytest.fixture(scope="session")
def table_1e5():
    return sieve(100_003)


@pytest.fixture(scope="session")
def small_table():
    return sieve(5000)


@pytest.fixture(scope="session")
def arith_1e4():
    return ArithTables.build(10_000)


@pytest.fixture(scope="session")
def arith_2e18():
    return ArithTables.build(1 << 18)


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    def record(number, passed, detail):
        ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
