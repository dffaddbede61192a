import numpy as np
import pytest

from luinv.quantum import BlochMatrix

WORKED_C = [[1, 0, 1], [0, 2, 0], [1, 0, 3]]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def worked():
    return BlochMatrix([1, 0, 0], [2, 0, 0], WORKED_C)


@pytest.fixture
def worked_symmetric():
    return BlochMatrix([1, 0, 0], [1, 0, 0], WORKED_C)


@pytest.fixture
def bell_rho():
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    return np.outer(phi, phi.conj())


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance_line(request):
    """Record one PASS/FAIL line; all lines are repeated in the terminal summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(line):
        lines.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance")
        for line in lines:
            terminalreporter.write_line(line)
