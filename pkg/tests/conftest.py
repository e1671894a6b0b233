import pytest

from dci.svm import warm_solver


@pytest.fixture(scope="session", autouse=True)
def warm_jit():
    # pay the one-time jit compilation before any timed assertion runs
    warm_solver()
