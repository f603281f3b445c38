"""
Exact densities of the empirical correlation coefficient in each scenario and
the quadrature-based tail probabilities and normalized cumulant generating
function built on them. These are the reference values every asymptotic
formula is checked against.

Spherical model (and the Gaussian model at rho = 0), sample size n:
    centered    r_n  ~ C (1 - r^2)^((n-4)/2),  t_{n-2} based
    known mean  r~_n ~ C (1 - r^2)^((n-3)/2),  t_{n-1} based
Gaussian centered model with correlation rho, m = n - 1:
    (m-1) Gamma(m) / (Gamma(m+1/2) sqrt(2pi)) (1-rho^2)^(m/2) (1-rho r)^(1/2-m)
        (1-r^2)^((m-3)/2) 2F1(1/2, 1/2; m+1/2; (1+rho r)/2)
"""
import math
import logging
from functools import lru_cache

import numpy as np

from sldcorr.core.config import settings
from sldcorr.core.exceptions import DomainError
from sldcorr.schemas.common import Scenario, ScenarioKind
from sldcorr.schemas.oracle_schema import QuadratureResult
from sldcorr.services.quadrature import integrate_log
from sldcorr.services.specfun import hyp2f1_series, log_gamma

logger = logging.getLogger(__name__)

MIN_SAMPLE_SIZE = 5


def _check_n(n: int) -> None:
    if n < MIN_SAMPLE_SIZE:
        raise DomainError(f"sample size must be at least {MIN_SAMPLE_SIZE}, got n={n}")


def _spherical_terms(s: Scenario, n: int):
    """(log normalizing constant, exponent of 1 - r^2) of a t-based density."""
    if s.known_mean:
        return log_gamma(n / 2) - 0.5 * math.log(math.pi) - log_gamma((n - 1) / 2), (n - 3) / 2
    return log_gamma((n - 1) / 2) - 0.5 * math.log(math.pi) - log_gamma((n - 2) / 2), (n - 4) / 2


def _gaussian_log_constant(n: int, rho: float) -> float:
    m = n - 1
    return (
        math.log(m - 1) + log_gamma(m) - log_gamma(m + 0.5) - 0.5 * math.log(2 * math.pi)
        + 0.5 * m * math.log1p(-rho * rho)
    )


def _log_kernel(s: Scenario, n: int, omr: np.ndarray, opr: np.ndarray) -> np.ndarray:
    """
    Log density written in terms of 1 - r and 1 + r, so points next to either
    end keep full relative accuracy. Gaussian values are not yet renormalized.
    """
    log_one_minus_sq = np.log(omr) + np.log(opr)
    if s.kind is not ScenarioKind.GAUSSIAN_CENTERED:
        log_const, exponent = _spherical_terms(s, n)
        return log_const + exponent * log_one_minus_sq

    m = n - 1
    rho = s.rho
    r = np.where(omr < opr, 1.0 - omr, opr - 1.0)
    rho_r = rho * r
    series = hyp2f1_series(0.5, 0.5, m + 0.5, 0.5 * (1.0 + rho_r))
    return (
        _gaussian_log_constant(n, rho)
        + (0.5 - m) * np.log1p(-rho_r)
        + 0.5 * (m - 3) * log_one_minus_sq
        + np.log(series)
    )


def _integrate_on(log_f, s: Scenario, n: int, lower: float, points=()) -> QuadratureResult:
    """
    int_lower^1 exp(log_f(r, log kernel)) dr for lower in [0, 1) or lower = -1.

    [0, 1) is mapped by r = 1 - u^2 and [-1, 0] by r = -1 + v^2, which turns
    the (1 - r^2)^alpha end behavior into a polynomial in u or v.
    """
    if not (0.0 <= lower < 1.0 or lower == -1.0):
        raise DomainError(f"integration from {lower} is not supported")

    def upper_half(u):
        omr = u * u
        opr = 2.0 - omr
        r = 1.0 - omr
        return log_f(r, _log_kernel(s, n, omr, opr)) + np.log(2.0 * u)

    def lower_half(v):
        opr = v * v
        omr = 2.0 - opr
        r = opr - 1.0
        return log_f(r, _log_kernel(s, n, omr, opr)) + np.log(2.0 * v)

    if lower >= 0.0:
        u_points = [math.sqrt(1.0 - p) for p in points if lower < p < 1.0]
        return integrate_log(upper_half, 0.0, math.sqrt(1.0 - lower), points=u_points)

    upper = integrate_log(upper_half, 0.0, 1.0, points=[math.sqrt(1.0 - p) for p in points if 0.0 < p < 1.0])
    v_points = [math.sqrt(1.0 + p) for p in points if -1.0 < p < 0.0]
    lower_part = integrate_log(lower_half, 0.0, 1.0, points=v_points)
    log_value = float(np.logaddexp(upper.log_value, lower_part.log_value))
    weight_upper = math.exp(upper.log_value - log_value)
    return QuadratureResult(
        log_value=log_value,
        abs_error_estimate=weight_upper * upper.abs_error_estimate + (1.0 - weight_upper) * lower_part.abs_error_estimate,
        subdivisions=upper.subdivisions + lower_part.subdivisions,
    )


@lru_cache(maxsize=256)
def gaussian_log_normalization(n: int, rho: float) -> float:
    """
    log of the integral of the analytic Gaussian density over (-1, 1).

    It should vanish; drift beyond NORMALIZATION_TOL is logged and always
    divided out.
    """
    s = Scenario(kind=ScenarioKind.GAUSSIAN_CENTERED, rho=rho)
    total = _integrate_on(lambda r, log_k: log_k, s, n, -1.0, points=(rho,))
    drift = math.expm1(total.log_value)
    if abs(drift) > settings.NORMALIZATION_TOL:
        logger.warning(f"Gaussian density constant off by {drift:.3e} at n={n}, rho={rho}; renormalizing")
    else:
        logger.debug(f"Gaussian density normalization at n={n}, rho={rho}: {drift:.3e}")
    return total.log_value


def _log_shift(s: Scenario, n: int) -> float:
    if s.kind is ScenarioKind.GAUSSIAN_CENTERED:
        return gaussian_log_normalization(n, s.rho)
    return 0.0


def log_density(s: Scenario, n: int, r):
    """Natural log of the density of r_n (or r~_n) at r for sample size n."""
    _check_n(n)
    r_arr = np.asarray(r, dtype=float)
    if np.any(np.abs(r_arr) >= 1.0):
        raise DomainError("the correlation coefficient density is defined on |r| < 1")
    value = _log_kernel(s, n, 1.0 - r_arr, 1.0 + r_arr) - _log_shift(s, n)
    return value if value.ndim else float(value)


def tail_exact(s: Scenario, n: int, c: float) -> QuadratureResult:
    """log P(r_n >= c) by adaptive quadrature of the exact density on [c, 1)."""
    _check_n(n)
    if not 0.0 < c < 1.0:
        raise DomainError(f"threshold c must lie in (0, 1), got c={c}")
    shift = _log_shift(s, n)
    peak = (s.rho,) if s.kind is ScenarioKind.GAUSSIAN_CENTERED else ()
    result = _integrate_on(lambda r, log_k: log_k, s, n, c, points=peak)
    return QuadratureResult(
        log_value=result.log_value - shift,
        abs_error_estimate=result.abs_error_estimate,
        subdivisions=result.subdivisions,
    )


def mgf_exact(s: Scenario, n: int, lam: float) -> float:
    """L_n(lambda) = (1/n) log E exp(n lambda r_n) by quadrature."""
    _check_n(n)
    if lam == 0.0:
        return 0.0
    shift = _log_shift(s, n)
    # tilted density peaks near the stationary point of lambda r + log(1-r^2)/2 (+ rho term)
    peak = 2.0 * lam / (1.0 + math.sqrt(1.0 + 4.0 * lam * lam))
    result = _integrate_on(lambda r, log_k: n * lam * r + log_k, s, n, -1.0, points=(peak,))
    return (result.log_value - shift) / n
