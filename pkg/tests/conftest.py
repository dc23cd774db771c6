from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

from dnls_scattering.potential import AnalyticPotential, sample, zero_potential

RAY = cmath.exp(0.25j * math.pi)


def gaussian(amplitude=1.0, width=1.0, chirp=0.0, x_min=-30.0, x_max=30.0, n=2048):
    return sample(AnalyticPotential("gaussian", amplitude, width, chirp), x_min, x_max, n)


@pytest.fixture
def zero():
    return zero_potential()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
