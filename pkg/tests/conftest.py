import numpy as np
import pytest

import tvtrack as tv


@pytest.fixture(scope="session")
def toy():
    return tv.toy_problem()


@pytest.fixture(scope="session")
def target():
    return tv.target_tracking_problem()


@pytest.fixture(scope="session")
def robust():
    return tv.robust_regression_problem(n=10, m=100, seed=0, h=0.1)


@pytest.fixture(scope="session")
def exp2_sharp(target):
    """The reference strongly convex run: P=7, C=1, v=10, alpha=1/2, h=0.1."""
    algo = tv.Sharp(tv.SolverConfig(h=0.1, P=7, v=10.0, alpha=0.5, C=1))
    result = tv.run(target, algo, np.zeros(2), 400)
    assert result.completed
    return result
