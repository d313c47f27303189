import numpy as np
import pytest

from curvedttw.dynamics import PhaseState

ACCEPTANCE_LINES = []


def record(criterion, passed, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_states(rng, n, r=(0.3, 1.2), phi=(0.2, 1.3), p=(-1.5, 1.5)):
    return PhaseState(rng.uniform(*r, n), rng.uniform(*phi, n), rng.uniform(*p, n), rng.uniform(*p, n))
