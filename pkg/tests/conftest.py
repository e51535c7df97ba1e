import numpy as np
import pytest

from cavitywalk.params import SystemParams


@pytest.fixture
def params():
    """Walk-study parameter set (T = 100)."""
    return SystemParams()


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


def random_state_vector(rng, full=False):
    dim = 7 if full else 6
    y = rng.uniform(-1.0, 1.0, dim)
    if full:
        y[6] = rng.uniform(-1.0, 1.0)
    return y
