import logging
import math

import numpy as np
import pytest

from sldcorr.core.exceptions import DomainError
from sldcorr.services.bahadur import (LOG_HALF, bahadur_slope, correlation_test, kl_divergence_gaussian,
                                      kl_infimum, kl_infimum_numeric, p_value_exact, p_value_sld)

GRID = [sign * 0.1 * k for k in range(1, 10) for sign in (1, -1)]


def test_slope_values():
    assert bahadur_slope(0.5) == pytest.approx(0.2876821, abs=1e-7)
    assert bahadur_slope(1e-6) == pytest.approx(1e-12, rel=1e-6)
    assert bahadur_slope(-0.5) == bahadur_slope(0.5)


def test_slope_rejects_null_and_boundary():
    for rho in (0.0, 1.0, -1.2):
        with pytest.raises(DomainError):
            bahadur_slope(rho)


def test_kl_infimum_values():
    assert kl_infimum(0.0) == 0.0
    assert kl_infimum(0.5) == pytest.approx(0.1438410, abs=1e-7)


@pytest.mark.parametrize("rho", GRID)
def test_optimality_identity(rho):
    assert abs(bahadur_slope(rho) - 2 * kl_infimum(rho)) <= 1e-12


@pytest.mark.parametrize("rho", [0.0, 0.3, -0.5, 0.9])
def test_numeric_kl_infimum(rho):
    assert kl_infimum_numeric(rho) == pytest.approx(kl_infimum(rho), abs=1e-6)


def test_kl_divergence_gaussian():
    identity = np.eye(2)
    assert kl_divergence_gaussian(np.zeros(2), identity, np.zeros(2), identity) == pytest.approx(0.0, abs=1e-15)
    assert kl_divergence_gaussian(np.zeros(2), identity, np.array([1.0, 2.0]), identity) == pytest.approx(2.5)
    # univariate variance mismatch: (s^2 - 1 - log s^2) / 2
    value = kl_divergence_gaussian(np.zeros(1), np.array([[4.0]]), np.zeros(1), np.array([[1.0]]))
    assert value == pytest.approx(0.5 * (4.0 - 1.0 - math.log(4.0)))


# --- p-values ----------------------------------------------------------------------

def test_p_value_spot_values():
    log_sld = p_value_sld(20, 0.5)
    log_exact = p_value_exact(20, 0.5)
    assert math.exp(log_sld) == pytest.approx(1.34e-2, rel=2e-3)
    assert math.exp(log_exact) == pytest.approx(1.24e-2, rel=3e-3)
    assert abs(log_sld - log_exact) < 2.0 / 20


def test_p_value_near_zero_is_one_half(monkeypatch, caplog):
    monkeypatch.setattr(logging.getLogger("sldcorr"), "propagate", True)
    with caplog.at_level(logging.INFO, logger="sldcorr"):
        assert p_value_sld(20, 1e-6) == LOG_HALF
    assert "capped" in caplog.text
    assert p_value_exact(20, 1e-9) == pytest.approx(LOG_HALF, abs=1e-8)


def test_p_value_is_decreasing():
    by_r = [p_value_sld(40, r) for r in (0.3, 0.4, 0.5, 0.6, 0.8)]
    assert all(a > b for a, b in zip(by_r, by_r[1:]))
    by_n = [p_value_sld(n, 0.5) for n in (20, 40, 80, 160)]
    assert all(a > b for a, b in zip(by_n, by_n[1:]))


def test_p_value_exponent():
    n, c = 4000, 0.5
    assert -p_value_sld(n, c) / n == pytest.approx(-0.5 * math.log(1 - c * c), abs=5e-3)


def test_known_mean_null():
    assert p_value_sld(20, 0.5, known_mean=True) < p_value_sld(20, 0.5)
    assert p_value_exact(20, 0.5, known_mean=True) < p_value_exact(20, 0.5)


@pytest.mark.parametrize("rho", [0.3, 0.5, 0.8])
def test_slope_recovered_from_exact_tail(rho):
    n = 400
    assert -2.0 / n * p_value_exact(n, rho) == pytest.approx(bahadur_slope(rho), abs=0.02)


def test_correlation_test_report():
    report = correlation_test(20, 0.5)
    assert report.statistic == 0.5
    assert report.n == 20
    assert report.log_p_value == p_value_sld(20, 0.5)
    assert report.log_p_value_exact == pytest.approx(p_value_exact(20, 0.5))
    assert report.slope_at_statistic == pytest.approx(0.2876821, abs=1e-7)


@pytest.mark.parametrize("r_obs", [0.0, 1.0, -0.3])
def test_statistic_must_be_positive(r_obs):
    with pytest.raises(DomainError):
        p_value_sld(20, r_obs)
    with pytest.raises(DomainError):
        p_value_exact(20, r_obs)
