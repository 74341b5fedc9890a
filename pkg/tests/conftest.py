import numpy as np
import pytest

from dehncube import conventions


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size randomised suites (deselect with -m \"not slow\")")


@pytest.fixture
def np_random():
    return np.random.default_rng(seed=12345)


@pytest.fixture(params=conventions.GOLDEN, ids=lambda g: g[0] or "unknot")
def golden(request):
    """``(word, strands, E_2 total, determinant)``"""
    return request.param
