import numpy as np
import pytest

from wddt import MultilayerGraph

_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    """Record one PASS/FAIL line per acceptance criterion for the terminal summary."""

    def log(criterion, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return log


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


TRIANGLE = [(0, 1), (1, 2), (0, 2)]
PATH3 = [(0, 1), (1, 2)]


def star(k, center=0):
    return [(center, i) for i in range(1, k + 1)]


def random_layers(rng, n, L, p):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return [[e for e in pairs if rng.random() < p] for _ in range(L)]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def triangle_graph():
    return MultilayerGraph(3, [TRIANGLE])
