"""
Laplace-method asymptotics of integrals int e^{x p(t)} q(t) dt around an
interior maximum t0 of the phase p.

The expansion is

    e^{x p(t0)} * sum_j c_j / ((2j)! x^{j + 1/2})

with c_N built from binomials, partial Bell polynomials of the scaled phase
derivatives p^{(j+2)} / ((j+1)(j+2)) and odd double factorials. Jets are
supplied analytically by the callers; `LogPowerFunction` produces them for
every integrand this package needs.
"""
import math
import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from sldcorr.core.exceptions import DomainError, ExpansionError, NonConvergenceError
from sldcorr.schemas.laplace_schema import DerivativeJet, LaplaceCoefficients
from sldcorr.services.specfun import bell_table, odd_double_factorial

logger = logging.getLogger(__name__)

# |p'(t0)| must vanish to this tolerance, relative to the curvature scale
STATIONARY_TOL = 1e-8


@dataclass(frozen=True)
class LogPowerFunction:
    """
    f(r) = exp(log_scale + mu*r) * (1-r)^alpha * (1+r)^beta * (1-rho*r)^gamma on (-1, 1).

    Covers the phases h, h_bar (through `log_jet`) and the amplitudes g,
    g_bar (through `jet`) of every correlation integral.
    """
    mu: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    rho: float = 0.0
    log_scale: float = 0.0

    def log_value(self, r):
        r = np.asarray(r, dtype=float)
        value = self.log_scale + self.mu * r
        if self.alpha:
            value = value + self.alpha * np.log1p(-r)
        if self.beta:
            value = value + self.beta * np.log1p(r)
        if self.gamma:
            value = value + self.gamma * np.log1p(-self.rho * r)
        return value if value.ndim else float(value)

    def log_derivative(self, r: float, k: int) -> float:
        """k-th derivative (k >= 1) of log f at r."""
        fact = math.factorial(k - 1)
        value = -self.alpha * fact / (1.0 - r) ** k
        value += self.beta * (-1) ** (k - 1) * fact / (1.0 + r) ** k
        if self.gamma:
            value -= self.gamma * fact * self.rho ** k / (1.0 - self.rho * r) ** k
        if k == 1:
            value += self.mu
        return value

    def log_jet(self, r: float, order: int) -> DerivativeJet:
        """Jet of log f, i.e. of the phase when f = e^{phase}."""
        derivs = [self.log_value(r)] + [self.log_derivative(r, k) for k in range(1, order + 1)]
        return DerivativeJet(point=r, derivs=tuple(derivs))

    def jet(self, r: float, order: int) -> DerivativeJet:
        """
        Jet of f itself by Faa di Bruno: f^{(k)} = f * B_k(phi', ..., phi^{(k)})
        with phi = log f and B_k the complete Bell polynomial.
        """
        value = math.exp(self.log_value(r))
        if order == 0:
            return DerivativeJet(point=r, derivs=(value,))
        log_derivs = [self.log_derivative(r, k) for k in range(1, order + 1)]
        table = bell_table(order, log_derivs)
        derivs = [value] + [value * float(table[k, 1:k + 1].sum()) for k in range(1, order + 1)]
        return DerivativeJet(point=r, derivs=tuple(derivs))


def find_interior_max(
    derivative: Callable[[float], float],
    bracket: Tuple[float, float],
    second_derivative: Optional[Callable[[float], float]] = None,
) -> float:
    """
    Locates t0 in the open bracket where the phase derivative changes sign.

    Uses Brent's bracketed root search on the derivative. The bracket ends are
    pulled inwards slightly so phases with singular derivatives at the ends
    (log(1 - r^2) type terms) can be passed with their natural domain.
    """
    lo, hi = bracket
    if not lo < hi:
        raise DomainError(f"bracket must satisfy lo < hi, got ({lo}, {hi})")
    shrink = 1e-12 * (hi - lo)
    lo, hi = lo + shrink, hi - shrink

    d_lo, d_hi = derivative(lo), derivative(hi)
    if d_lo == 0.0:
        return lo
    if d_hi == 0.0:
        return hi
    if np.sign(d_lo) == np.sign(d_hi):
        raise DomainError(f"phase derivative does not change sign on ({lo}, {hi}): {d_lo:.3e}, {d_hi:.3e}")

    try:
        t0 = brentq(derivative, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    except RuntimeError as e:
        raise NonConvergenceError(f"maximum location failed on ({lo}, {hi}): {e}") from e

    if second_derivative is not None:
        curvature = second_derivative(t0)
        if curvature >= 0.0:
            logger.warning(f"Phase is not concave at its stationary point t0={t0:.12g} (p''={curvature:.3e})")
    return float(t0)


def _check_phase(phase: DerivativeJet) -> float:
    if phase.order < 2:
        raise DomainError(f"a phase jet needs order >= 2, got {phase.order}")
    curvature = phase[2]
    if not curvature < 0.0:
        raise DomainError(f"phase must have p''(t0) < 0, got {curvature}")
    if abs(phase[1]) > STATIONARY_TOL * max(1.0, abs(curvature)):
        raise DomainError(f"phase jet is not stationary: p'(t0) = {phase[1]:.3e}")
    return -curvature


def laplace_coefficient(N: int, phase: DerivativeJet, amp: DerivativeJet) -> float:
    """
    c_N = sqrt(2pi/a) sum_k C(2N,k) q^{(2N-k)} sum_m B_{k,m}(x_1, ...) (2m+2N-1)!! / a^{m+N}

    with a = |p''(t0)| and x_j = p^{(j+2)}(t0) / ((j+1)(j+2)).
    """
    if N < 0:
        raise DomainError(f"expansion order must be non-negative, got {N}")
    a = _check_phase(phase)
    if phase.order < 2 * N + 2:
        raise DomainError(f"c_{N} needs a phase jet of order {2 * N + 2}, got {phase.order}")
    if amp.order < 2 * N:
        raise DomainError(f"c_{N} needs an amplitude jet of order {2 * N}, got {amp.order}")

    scaled = [phase[j + 2] / ((j + 1) * (j + 2)) for j in range(1, 2 * N + 1)]
    bell = bell_table(2 * N, scaled)

    total = 0.0
    for k in range(2 * N + 1):
        inner = 0.0
        for m in range(k + 1):
            if bell[k, m] == 0.0:
                continue
            inner += bell[k, m] * odd_double_factorial(m + N) / a ** (m + N)
        total += math.comb(2 * N, k) * amp[2 * N - k] * inner

    return math.sqrt(2.0 * math.pi / a) * total


def laplace_coefficients(N: int, phase: DerivativeJet, amp: DerivativeJet) -> LaplaceCoefficients:
    return LaplaceCoefficients(c=tuple(laplace_coefficient(j, phase, amp) for j in range(N + 1)))


def laplace_expand(x: float, phase: DerivativeJet, amp: DerivativeJet, N: int) -> float:
    """
    log of e^{x p(t0)} sum_{j<=N} c_j / ((2j)! x^{j+1/2}).

    Raises ExpansionError when the truncated sum is not positive, i.e. the
    expansion cannot be used at this scale and order.
    """
    if not x > 0:
        raise DomainError(f"the large parameter must be positive, got {x}")
    coefficients = laplace_coefficients(N, phase, amp).c
    partial = sum(c / (math.factorial(2 * j) * x ** (j + 0.5)) for j, c in enumerate(coefficients))
    if not partial > 0.0:
        raise ExpansionError(f"Laplace partial sum of order {N} is {partial:.3e} at x={x}", partial=partial)
    return x * phase[0] + math.log(partial)
