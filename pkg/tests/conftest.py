import numpy as np
import pytest

from phrod.integrator import simulate
from phrod.rod import RodConfig, assemble_rod


@pytest.fixture(scope="session")
def benchmark_rod():
    return assemble_rod(RodConfig(n_elements=100))


@pytest.fixture(scope="session")
def benchmark_rod_200():
    return assemble_rod(RodConfig(n_elements=200))


def run_benchmark(rod, dt=1e-6, t_final=1e-2):
    model = rod.model
    return simulate(model, rod.config.inputs, np.zeros(model.n_state), dt, t_final)


@pytest.fixture(scope="session")
def benchmark_trajectory(benchmark_rod):
    return run_benchmark(benchmark_rod)


@pytest.fixture(scope="session")
def benchmark_trajectory_200(benchmark_rod_200):
    return run_benchmark(benchmark_rod_200)


@pytest.fixture
def rng():
    return np.random.default_rng(20211)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in RESULTS:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
