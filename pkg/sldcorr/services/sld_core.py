"""
Rate functions, saddlepoint quantities and first-order sharp large-deviation
approximations of P(r_n >= c).

For every scenario

    P(r_n >= c) ~ exp(-n L*(c)) * K(c) / (lambda_c sigma_c sqrt(2 pi n))

where K(c) is the exponential of the 1/n coefficient of the normalized
cumulant generating function at the saddle. Spherical cases use closed forms;
the Gaussian centered case works with

    h_bar(r) = lambda r + log(1 - r^2)/2 - log(1 - rho r)
    g_bar(r) = (1 - rho^2)^(-1/2) (1 - rho r)^(3/2) (1 - r^2)^(-2)

and is only valid for |rho| <= RHO_0, where h_bar stays concave.
"""
import math
import logging
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from sldcorr.core.config import settings
from sldcorr.core.exceptions import DomainError, NonConvergenceError
from sldcorr.schemas.common import Scenario, ScenarioKind
from sldcorr.schemas.sld_schema import GaussianSaddleContext, Method, NcgfExpansion, SaddlePoint, TailEstimate
from sldcorr.services.densities_oracle import MIN_SAMPLE_SIZE
from sldcorr.services.laplace_engine import LogPowerFunction, find_interior_max, laplace_coefficient, laplace_expand
from sldcorr.services.specfun import hyp2f1_temme, log_gamma

logger = logging.getLogger(__name__)

RHO_0 = math.sqrt(3.0 + 2.0 * math.sqrt(3.0)) / 3.0

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


# --- Phases and amplitudes -------------------------------------------------

def _phase(lam: float, rho: float = 0.0) -> LogPowerFunction:
    """h (rho = 0) or h_bar as the log of a LogPowerFunction."""
    return LogPowerFunction(mu=lam, alpha=0.5, beta=0.5, gamma=-1.0 if rho else 0.0, rho=rho)


def _amplitude(s: Scenario) -> LogPowerFunction:
    if s.kind is ScenarioKind.GAUSSIAN_CENTERED:
        return LogPowerFunction(
            alpha=-2.0, beta=-2.0, gamma=1.5, rho=s.rho, log_scale=-0.5 * math.log1p(-s.rho * s.rho)
        )
    exponent = -1.5 if s.known_mean else -2.0
    return LogPowerFunction(alpha=exponent, beta=exponent)


def _hbar_second(rho: float, r: float) -> float:
    return rho * rho / (1.0 - rho * r) ** 2 - (1.0 + r * r) / (1.0 - r * r) ** 2


def _check_rho(s: Scenario) -> None:
    if s.kind is ScenarioKind.GAUSSIAN_CENTERED and abs(s.rho) > RHO_0:
        raise DomainError(
            f"|rho| = {abs(s.rho):g} exceeds rho_0 = {RHO_0:.8f}; the sharp asymptotics need |rho| <= rho_0"
        )


def _check_y(y: float) -> None:
    if not -1.0 < y < 1.0:
        raise DomainError(f"argument must lie in (-1, 1), got {y}")


# --- Normalized cumulant generating function ------------------------------

def r0_of_lambda(lam: float) -> float:
    """Maximizer of h(r) = lambda r + log(1 - r^2)/2, i.e. (-1 + sqrt(1 + 4 lambda^2)) / (2 lambda)."""
    # rationalized form: no cancellation for small lambda and exact 0 at lambda = 0
    return 2.0 * lam / (1.0 + math.sqrt(1.0 + 4.0 * lam * lam))


def _gaussian_r0(lam: float, rho: float) -> float:
    phase = _phase(lam, rho)
    return find_interior_max(
        lambda r: phase.log_derivative(r, 1),
        (-1.0, 1.0),
        second_derivative=lambda r: phase.log_derivative(r, 2),
    )


def lambda_derivative(s: Scenario, lam: float) -> float:
    """L'(lambda), which is the location r0(lambda) of the phase maximum."""
    if s.kind is ScenarioKind.GAUSSIAN_CENTERED and s.rho != 0.0:
        _check_rho(s)
        return _gaussian_r0(lam, s.rho)
    return r0_of_lambda(lam)


def _log_c0(s: Scenario, lam: float, r0: float) -> float:
    phase = _phase(lam, s.rho).log_jet(r0, 2)
    amp = _amplitude(s).jet(r0, 0)
    return math.log(laplace_coefficient(0, phase, amp))


def _spherical_limit(lam: float) -> float:
    root = math.sqrt(1.0 + 4.0 * lam * lam)
    return (root - 1.0) / 2.0 - 0.5 * math.log((1.0 + root) / 2.0)


def ncgf_limit_spherical(lam: float, known_mean: bool = False) -> NcgfExpansion:
    """
    L(lambda) = (s - 1)/2 - log((1 + s)/2)/2 with s = sqrt(1 + 4 lambda^2), and
    the 1/n coefficient of L_n(lambda): -[log(s)/2 - 3/2 log((1+s)/2)] for r_n,
    -[log(s)/2 - log((1+s)/2)] for the known-mean coefficient.
    """
    root = math.sqrt(1.0 + 4.0 * lam * lam)
    weight = 1.0 if known_mean else 1.5
    correction = -(0.25 * math.log1p(4.0 * lam * lam) - weight * math.log((1.0 + root) / 2.0))

    scenario = Scenario(kind=ScenarioKind.SPHERICAL_KNOWN_MEAN if known_mean else ScenarioKind.SPHERICAL_CENTERED)
    return NcgfExpansion(
        lam=lam,
        limit=_spherical_limit(lam),
        correction=correction,
        log_c0=_log_c0(scenario, lam, r0_of_lambda(lam)),
    )


def ncgf_limit(s: Scenario, lam: float) -> float:
    """L(lambda) = lim L_n(lambda)."""
    if s.kind is not ScenarioKind.GAUSSIAN_CENTERED or s.rho == 0.0:
        return _spherical_limit(lam)
    _check_rho(s)
    r0 = _gaussian_r0(lam, s.rho)
    return _phase(lam, s.rho).log_value(r0) + 0.5 * math.log1p(-s.rho * s.rho)


def ncgf_expansion(s: Scenario, lam: float) -> NcgfExpansion:
    """L_n(lambda) = limit + correction / n + O(1/n^2) for any scenario."""
    if s.kind is not ScenarioKind.GAUSSIAN_CENTERED or s.rho == 0.0:
        return ncgf_limit_spherical(lam, known_mean=s.known_mean)

    _check_rho(s)
    rho = s.rho
    r0 = _gaussian_r0(lam, rho)
    correction = _amplitude(s).log_value(r0) - 0.5 * math.log(abs(_hbar_second(rho, r0)))
    return NcgfExpansion(lam=lam, limit=ncgf_limit(s, lam), correction=correction, log_c0=_log_c0(s, lam, r0))


def mgf_laplace(s: Scenario, n: int, lam: float, order: int = 0) -> float:
    """
    Laplace-method value of L_n(lambda) to the given expansion order, with the
    exact Gamma normalizations of each density. The Gaussian 2F1 factor is
    frozen at the phase maximum through its two-term large-n form.
    """
    if n < MIN_SAMPLE_SIZE:
        raise DomainError(f"sample size must be at least {MIN_SAMPLE_SIZE}, got n={n}")
    _check_rho(s)
    r0 = lambda_derivative(s, lam)
    phase = _phase(lam, s.rho if s.kind is ScenarioKind.GAUSSIAN_CENTERED else 0.0)
    phase_jet = phase.log_jet(r0, 2 * order + 2)
    amplitude = _amplitude(s)

    if s.kind is ScenarioKind.GAUSSIAN_CENTERED:
        m = n - 1
        rho = s.rho
        # Gamma(m)/Gamma(m+1/2) of the constant cancels against the 2F1 factor
        log_const = (
            math.log(m - 1) - _LOG_SQRT_2PI + 0.5 * m * math.log1p(-rho * rho)
            + math.log(hyp2f1_temme(rho * r0, m))
        )
        # g_bar carries a (1 - rho^2)^(-1/2) the integrand does not have
        log_const += 0.5 * math.log1p(-rho * rho)
    elif s.known_mean:
        log_const = log_gamma(n / 2) - 0.5 * math.log(math.pi) - log_gamma((n - 1) / 2)
    else:
        log_const = log_gamma((n - 1) / 2) - 0.5 * math.log(math.pi) - log_gamma((n - 2) / 2)

    return (log_const + laplace_expand(n, phase_jet, amplitude.jet(r0, 2 * order), order)) / n


# --- Saddle point and tail approximation -----------------------------------

def gaussian_context(rho: float, c: float, order: int = 4) -> GaussianSaddleContext:
    """Jet of h_bar and value of g_bar at the saddle r0 = c."""
    s = Scenario(kind=ScenarioKind.GAUSSIAN_CENTERED, rho=rho)
    sp = saddle(s, c)
    jet = _phase(sp.lambda_c, rho).log_jet(c, order)
    return GaussianSaddleContext(rho=rho, hbar_jet=jet, gbar_value=math.exp(_amplitude(s).log_value(c)))


def saddle(s: Scenario, c: float) -> SaddlePoint:
    """
    lambda_c solving L'(lambda_c) = c, sigma_c^2 = L''(lambda_c) and L*(c).

    The Gaussian tilt comes from h_bar'(c) = 0, which is linear in lambda.
    """
    if not 0.0 < c < 1.0:
        raise DomainError(f"threshold c must lie in (0, 1), got c={c}")
    if s.kind is ScenarioKind.GAUSSIAN_CENTERED and s.rho != 0.0:
        _check_rho(s)
        rho = s.rho
        if c <= rho:
            raise DomainError(f"threshold c={c} must exceed rho={rho}")
        lambda_c = c / (1.0 - c * c) - rho / (1.0 - rho * c)
        sigma_sq = 1.0 / abs(_hbar_second(rho, c))
        rate = math.log((1.0 - rho * c) / (math.sqrt(1.0 - rho * rho) * math.sqrt(1.0 - c * c)))
    else:
        lambda_c = c / (1.0 - c * c)
        sigma_sq = (1.0 - c * c) ** 2 / (1.0 + c * c)
        rate = -0.5 * math.log1p(-c * c)
    return SaddlePoint(c=c, lambda_c=lambda_c, r0=c, sigma_sq=sigma_sq, rate=rate)


def _log_prefactor_numerator(s: Scenario, c: float) -> float:
    if s.kind is ScenarioKind.GAUSSIAN_CENTERED:
        return _amplitude(s).log_value(c) - 0.5 * math.log(abs(_hbar_second(s.rho, c)))
    if s.known_mean:
        return -0.5 * math.log1p(-c * c) - 0.5 * math.log1p(c * c)
    return -math.log1p(-c * c) - 0.5 * math.log1p(c * c)


def tail_sld(s: Scenario, n: int, c: float) -> TailEstimate:
    """First-order sharp large-deviation approximation of log P(r_n >= c)."""
    if n < MIN_SAMPLE_SIZE:
        raise DomainError(f"sample size must be at least {MIN_SAMPLE_SIZE}, got n={n}")
    sp = saddle(s, c)
    leading = -n * sp.rate
    log_prefactor = (
        _log_prefactor_numerator(s, c)
        - math.log(sp.lambda_c * math.sqrt(sp.sigma_sq))
        - 0.5 * math.log(2.0 * math.pi * n)
    )
    return TailEstimate(
        log_prob=leading + log_prefactor,
        method=Method.SLD,
        leading_exponent=leading,
        log_prefactor=log_prefactor,
    )


# --- Rate function ---------------------------------------------------------

def rate_function(s: Scenario, y: float) -> float:
    """
    L*(y): -log(1 - y^2)/2 for the spherical coefficients,
    I_rho(y) = log((1 - rho y) / (sqrt(1 - rho^2) sqrt(1 - y^2))) for the Gaussian one.
    """
    _check_y(y)
    if s.kind is ScenarioKind.GAUSSIAN_CENTERED and s.rho != 0.0:
        rho = s.rho
        return math.log1p(-rho * y) - 0.5 * math.log1p(-rho * rho) - 0.5 * math.log1p(-y * y)
    return -0.5 * math.log1p(-y * y)


def legendre_rate(s: Scenario, y: float) -> float:
    """sup_lambda {lambda y - L(lambda)} by bounded golden-section/parabolic search."""
    _check_y(y)
    _check_rho(s)
    bound = 2.0 / (1.0 - y * y) + 2.0 / (1.0 - abs(s.rho))
    result = minimize_scalar(
        lambda lam: ncgf_limit(s, lam) - lam * y,
        bounds=(-bound, bound),
        method="bounded",
        options={"xatol": 1e-12, "maxiter": 2000},
    )
    if not result.success:
        raise NonConvergenceError(f"Legendre transform search failed at y={y}: {result.message}", partial=-result.fun)
    return float(-result.fun)


def rate_second_derivative(rho: float, y: float) -> float:
    """I_rho''(y) = (1 + y^2)/(1 - y^2)^2 - rho^2/(1 - rho y)^2."""
    _check_y(y)
    if not -1.0 < rho < 1.0:
        raise DomainError(f"rho must lie in (-1, 1), got {rho}")
    return (1.0 + y * y) / (1.0 - y * y) ** 2 - rho * rho / (1.0 - rho * y) ** 2


def open_grid(points: int, include: Tuple[float, ...] = ()) -> np.ndarray:
    """`points` equally spaced abscissae strictly inside (-1, 1), plus `include`."""
    grid = np.linspace(-1.0, 1.0, points + 2)[1:-1]
    extra = [y for y in include if -1.0 < y < 1.0]
    return np.union1d(grid, extra) if extra else grid


def convexity_profile(rho: float, points: Optional[int] = None) -> List[Tuple[float, float, int]]:
    """(y, I_rho''(y), sign) on a grid of (-1, 1); negative signs mark lost convexity."""
    if not -1.0 < rho < 1.0:
        raise DomainError(f"rho must lie in (-1, 1), got {rho}")
    grid = open_grid(points or settings.GRID_POINTS)
    profile = []
    for y in grid:
        value = rate_second_derivative(rho, float(y))
        profile.append((float(y), value, int(np.sign(value))))
    return profile
