import numpy as np
import pytest

from editdist import _kernels


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # compile the numba kernels once so timing-sensitive tests see steady state
    _kernels.warm_kernels()


@pytest.fixture
def rng():
    return np.random.default_rng(0xC0FFEE)
