import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240601))


def brute_value(rule, pi, p):
    """Winning probability by explicit loops over every (v, w, i, j)."""
    n, m = pi.shape[0], p.shape[0]
    total = 0.0
    for v in range(n):
        for w in range(n):
            for i in range(m):
                for j in range(m):
                    total += rule[v, w, i, j] * pi[v, w] * p[i, j, v, w]
    return total


_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    """Collects criterion lines so they are printed even when output is captured."""
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
