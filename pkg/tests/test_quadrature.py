import math

import numpy as np
import pytest

from sldcorr.core.exceptions import DomainError, NonConvergenceError
from sldcorr.schemas.oracle_schema import QuadratureResult
from sldcorr.services.quadrature import integrate_log


def test_polynomial_is_exact():
    result = integrate_log(lambda x: 3.0 * np.log(x), 0.0, 2.0)
    assert result.log_value == pytest.approx(math.log(4.0), abs=1e-14)
    assert result.subdivisions >= 1


def test_gaussian_integral():
    result = integrate_log(lambda t: -0.5 * t * t, -40.0, 40.0)
    assert result.log_value == pytest.approx(0.5 * math.log(2 * math.pi), abs=1e-12)
    assert result.abs_error_estimate <= 1e-12


def test_huge_exponents_do_not_underflow():
    # int_0^1 (1 - x^2)^1000 dx = sqrt(pi) Gamma(1001) / (2 Gamma(1001.5))
    n = 1000
    result = integrate_log(lambda x: n * np.log1p(-x * x), 0.0, 1.0, points=(0.05,))
    expected = 0.5 * math.log(math.pi) + math.lgamma(n + 1) - math.log(2.0) - math.lgamma(n + 1.5)
    assert result.log_value == pytest.approx(expected, abs=1e-10)


def test_tiny_integrals_keep_relative_accuracy():
    # exp(-2000) * int_0^1 e^x dx
    result = integrate_log(lambda x: x - 2000.0, 0.0, 1.0)
    assert result.log_value == pytest.approx(-2000.0 + math.log(math.e - 1.0), abs=1e-12)


def test_zero_integrand():
    result = integrate_log(lambda x: np.full_like(x, -np.inf), 0.0, 1.0)
    assert result.log_value == -math.inf


def test_non_convergence_carries_partial_result():
    with pytest.raises(NonConvergenceError) as excinfo:
        integrate_log(lambda x: -0.5 * np.log(x), 0.0, 1.0, max_panels=10)
    partial = excinfo.value.partial
    assert isinstance(partial, QuadratureResult)
    assert partial.log_value == pytest.approx(math.log(2.0), abs=0.05)


@pytest.mark.parametrize("a, b", [(1.0, 1.0), (2.0, 1.0), (0.0, math.inf)])
def test_bad_bounds(a, b):
    with pytest.raises(DomainError):
        integrate_log(lambda x: x, a, b)
