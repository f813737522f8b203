import pytest

from sortnetopt.solver import default_config, find_solver


@pytest.fixture(scope="session")
def solver_config():
    if find_solver() is None:
        pytest.skip("no DIMACS SAT solver available (set SAT_SOLVER)")
    return default_config(timeout=600.0)
