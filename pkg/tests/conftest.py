import math

import numpy as np
import pytest

from sldcorr.schemas.common import (GAUSSIAN_KNOWN_MEAN_RHO_ZERO, SPHERICAL_CENTERED,
                                    SPHERICAL_KNOWN_MEAN, gaussian_centered)
from sldcorr.services.quadrature import integrate_log

RHO_0 = math.sqrt(3.0 + 2.0 * math.sqrt(3.0)) / 3.0

ALL_SCENARIOS = [
    SPHERICAL_CENTERED,
    SPHERICAL_KNOWN_MEAN,
    gaussian_centered(0.3),
    GAUSSIAN_KNOWN_MEAN_RHO_ZERO,
]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=ALL_SCENARIOS, ids=lambda s: s.label)
def scenario(request):
    return request.param


def log_quad(log_f, a, b, **kwargs) -> float:
    """Log of the integral of exp(log_f) on [a, b]; shortcut for the oracle checks."""
    return integrate_log(log_f, a, b, **kwargs).log_value
