import itertools

import numpy as np
import pytest

from lorentzsoliton import _accel
from lorentzsoliton.metric import MetricSpec

MUS = (0.25, -0.25, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0)
EPSS = (1, -1)
PARAM_BOX = [MetricSpec.exceptional(mu, eps) for mu, eps in itertools.product(MUS, EPSS)]


def box_points(n, seed=0, lo=-2.0, hi=2.0):
    return np.random.default_rng(seed).uniform(lo, hi, (n, 3))


@pytest.fixture(params=PARAM_BOX, ids=lambda s: f"mu={s.mu:g},eps={s.eps:+d}")
def spec(request):
    return request.param


@pytest.fixture
def points():
    return box_points(1000)


@pytest.fixture(params=["numpy", "numba"])
def backend(request, monkeypatch):
    if request.param == "numba" and not _accel.NUMBA_AVAILABLE:
        pytest.skip("numba not installed")
    monkeypatch.setattr(_accel, "USE_NUMBA", request.param == "numba")
    return request.param
