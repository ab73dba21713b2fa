import numpy as np
import pytest

from mimo_tradeoff import PowerModel, SystemConfig

ACCEPTANCE_RESULTS = []


@pytest.fixture
def pm():
    return PowerModel()


@pytest.fixture
def cfg():
    return SystemConfig(K=8, M_t=64, N=16, rho_d=1.0, beta=20e6)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def report():
    def record(criterion, passed, detail):
        ACCEPTANCE_RESULTS.append((criterion, bool(passed), detail))
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {criterion}: {detail}")
