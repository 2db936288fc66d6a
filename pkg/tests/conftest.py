import numpy as np
import pytest

from flagvol.selftest import random_decoration


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def decoration(rng):
    return random_decoration(rng)
