"""
Adaptive Gauss-Legendre quadrature carried out entirely in log space.

Integrands are given as their logarithm, so integrals of quantities such as
(1 - r^2)^(n/2) with n in the thousands never underflow. Each panel is
integrated with a low and a high order rule; their difference is the panel's
error estimate and the panels with the largest share of the error are bisected
until the total relative error meets the tolerance.
"""
import math
import logging
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import logsumexp, roots_legendre

from sldcorr.core.config import settings
from sldcorr.core.exceptions import DomainError, NonConvergenceError
from sldcorr.schemas.oracle_schema import QuadratureResult

logger = logging.getLogger(__name__)

LogIntegrand = Callable[[np.ndarray], np.ndarray]


@lru_cache(maxsize=16)
def _rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = roots_legendre(order)
    return nodes, np.log(weights)


def _log_abs_diff(x: float, y: float) -> float:
    """log|e^x - e^y|."""
    hi, lo = max(x, y), min(x, y)
    if hi == -math.inf or hi == lo:
        return -math.inf
    return hi + math.log(-math.expm1(lo - hi))


def _panel(log_f: LogIntegrand, lo: float, hi: float, low_order: int, high_order: int) -> Tuple[float, float]:
    """Returns (log integral by the high order rule, log error estimate) on [lo, hi]."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    log_half = math.log(half)

    estimates = []
    for order in (low_order, high_order):
        nodes, log_w = _rule(order)
        values = np.asarray(log_f(mid + half * nodes), dtype=float)
        if np.any(np.isnan(values)):
            raise DomainError(f"log-integrand returned NaN on [{lo}, {hi}]")
        if np.all(values == -np.inf):
            estimates.append(-math.inf)
        else:
            estimates.append(float(logsumexp(values + log_w)) + log_half)

    return estimates[1], _log_abs_diff(estimates[0], estimates[1])


def integrate_log(
    log_f: LogIntegrand,
    a: float,
    b: float,
    rtol: Optional[float] = None,
    max_panels: Optional[int] = None,
    points: Sequence[float] = (),
) -> QuadratureResult:
    """
    Computes log of the integral of exp(log_f) over [a, b].

    `log_f` must accept and return numpy arrays; it is never evaluated at the
    interval ends. `points` are extra breakpoints inside (a, b), e.g. the
    location of a sharp peak.
    """
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise DomainError(f"integration bounds must be finite with a < b, got [{a}, {b}]")

    rtol = settings.QUAD_RTOL if rtol is None else rtol
    max_panels = settings.QUAD_MAX_PANELS if max_panels is None else max_panels
    low_order, high_order = settings.QUAD_LOW_ORDER, settings.QUAD_HIGH_ORDER
    log_rtol = math.log(rtol)

    # 1. Initial uniform partition, refined by the caller's breakpoints
    edges = np.linspace(a, b, settings.QUAD_INITIAL_PANELS + 1)
    inner = [p for p in points if a < p < b]
    edges = np.unique(np.concatenate([edges, inner]))

    panels: List[Tuple[float, float, float, float]] = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        value, err = _panel(log_f, float(lo), float(hi), low_order, high_order)
        panels.append((float(lo), float(hi), value, err))

    # 2. Bisect every panel carrying more than its share of the error budget
    while True:
        log_values = np.array([p[2] for p in panels])
        log_errors = np.array([p[3] for p in panels])
        if np.all(log_values == -np.inf):
            return QuadratureResult(log_value=-math.inf, abs_error_estimate=0.0, subdivisions=len(panels))

        total = float(logsumexp(log_values))
        error = float(logsumexp(log_errors)) if np.any(log_errors > -np.inf) else -math.inf
        if error - total <= log_rtol:
            return QuadratureResult(
                log_value=total,
                abs_error_estimate=math.exp(error - total),
                subdivisions=len(panels),
            )

        if len(panels) >= max_panels:
            partial = QuadratureResult(
                log_value=total,
                abs_error_estimate=math.exp(error - total),
                subdivisions=len(panels),
            )
            logger.warning(
                f"Quadrature on [{a}, {b}] stopped at {len(panels)} panels with relative error {partial.abs_error_estimate:.3e}"
            )
            raise NonConvergenceError(
                f"quadrature did not reach rtol={rtol} within {max_panels} panels", partial=partial
            )

        threshold = total + log_rtol - math.log(len(panels))
        refined = []
        for lo, hi, value, err in panels:
            if err > threshold:
                mid = 0.5 * (lo + hi)
                if mid <= lo or mid >= hi:
                    refined.append((lo, hi, value, -math.inf))
                    continue
                refined.append((lo, mid, *_panel(log_f, lo, mid, low_order, high_order)))
                refined.append((mid, hi, *_panel(log_f, mid, hi, low_order, high_order)))
            else:
                refined.append((lo, hi, value, err))
        panels = refined
