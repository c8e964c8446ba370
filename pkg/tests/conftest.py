import pytest

from arcsine_lab.samplers import occupation_counts

GRID_TRIALS = 100_000
GRID_STEPS = 10_000

_acceptance_lines: list[str] = []


@pytest.fixture(scope="session")
def grid_counts():
    """10^5 occupation-grid samples at 10^4 steps, shared across modules."""
    return occupation_counts(0.0, GRID_STEPS, GRID_TRIALS, seed=11)


@pytest.fixture(scope="session")
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
