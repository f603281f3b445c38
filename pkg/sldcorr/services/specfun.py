"""
Special functions and combinatorial polynomials used by every other service:
log-gamma, odd double factorials, Bell polynomials and the Gauss
hypergeometric series with its large-c asymptotic form.
"""
import math
import logging
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import gammaln

from sldcorr.core.config import settings
from sldcorr.core.exceptions import DomainError, NonConvergenceError, NumericalError
from sldcorr.schemas.specfun_schema import BellIndex, Hyp2F1Params

logger = logging.getLogger(__name__)


def log_gamma(x: float) -> float:
    """
    Natural log of Gamma(x) for x > 0.

    scipy's gammaln combines a rational minimax fit on small arguments with
    the Stirling series for large ones.
    """
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return float(gammaln(x))


def log_gamma_ratio(a: float, b: float) -> float:
    """log(Gamma(a) / Gamma(b)) without forming either Gamma value."""
    if not (a > 0 and b > 0):
        raise DomainError(f"log_gamma_ratio requires a, b > 0, got a={a}, b={b}")
    if a == b:
        return 0.0
    return float(gammaln(a) - gammaln(b))


def double_factorial_odd(m: int) -> int:
    """(2m+1)!! = 1 * 3 * ... * (2m+1), exact."""
    if m < 0:
        raise DomainError(f"double_factorial_odd requires m >= 0, got {m}")
    value = math.prod(range(1, 2 * m + 2, 2))
    try:
        float(value)
    except OverflowError:
        raise NumericalError(f"(2*{m}+1)!! exceeds the double precision range") from None
    return value


def odd_double_factorial(j: int) -> int:
    """(2j-1)!! with the convention (-1)!! = 1."""
    return 1 if j == 0 else double_factorial_odd(j - 1)


def bell_table(n_max: int, x: Sequence[float]) -> np.ndarray:
    """
    All partial Bell polynomials B_{n,k}(x_1, x_2, ...) for 0 <= k <= n <= n_max,
    by the recurrence B_{n,k} = sum_j C(n-1, j-1) x_j B_{n-j,k-1}.

    Entry [n, k] holds B_{n,k}; entries with k > n are zero.
    """
    needed = n_max
    if n_max > 0 and len(x) < needed:
        raise DomainError(f"Bell polynomials up to n={n_max} need {needed} arguments, got {len(x)}")
    table = np.zeros((n_max + 1, n_max + 1))
    table[0, 0] = 1.0
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            total = 0.0
            for j in range(1, n - k + 2):
                total += math.comb(n - 1, j - 1) * x[j - 1] * table[n - j, k - 1]
            table[n, k] = total
    return table


def bell_partial(idx: BellIndex, x: Sequence[float]) -> float:
    """B_{n,k}(x_1, ..., x_{n-k+1})."""
    n, k = idx.n, idx.k
    if k == 0:
        return 1.0 if n == 0 else 0.0
    if len(x) < n - k + 1:
        raise DomainError(f"B_{{{n},{k}}} needs {n - k + 1} arguments, got {len(x)}")
    # Only x_1..x_{n-k+1} enter B_{n,k}; pad the rest for the shared table.
    args = list(x[: n - k + 1]) + [0.0] * (k - 1)
    return float(bell_table(n, args)[n, k])


def bell_complete(n: int, x: Sequence[float]) -> float:
    """Complete exponential Bell polynomial B_n = sum_k B_{n,k}."""
    if n < 0:
        raise DomainError(f"complete Bell polynomial needs n >= 0, got {n}")
    if n == 0:
        return 1.0
    return float(bell_table(n, x)[n, 1:].sum())


def hyp2f1_series(a: float, b: float, c: float, z: ArrayLike) -> np.ndarray:
    """
    Gauss series for 2F1(a, b; c; z), vectorized over z.

    Terms follow the ratio t_{k+1} / t_k = (a+k)(b+k) z / ((c+k)(k+1)); the sum
    stops once every new term is below HYP2F1_RTOL relative to its partial sum
    while the ratio is contracting.
    """
    z = np.asarray(z, dtype=float)
    if np.any(np.abs(z) >= 1.0):
        raise DomainError("the Gauss series needs |z| < 1")
    if c <= 0 and float(c).is_integer():
        raise DomainError(f"c must not be a non-positive integer, got {c}")

    term = np.ones_like(z)
    total = np.ones_like(z)
    rtol = settings.HYP2F1_RTOL
    for k in range(settings.HYP2F1_MAX_TERMS):
        ratio = (a + k) * (b + k) / ((c + k) * (k + 1))
        term = term * ratio * z
        total = total + term
        if abs(ratio) < 1.0 and np.all(np.abs(term) <= rtol * np.abs(total)):
            return total
    raise NonConvergenceError(
        f"2F1({a}, {b}; {c}; z) did not converge in {settings.HYP2F1_MAX_TERMS} terms",
        partial=total,
    )


def hyp2f1(params: Hyp2F1Params) -> float:
    """2F1(a, b; c; z) for real parameters and |z| < 1."""
    return float(hyp2f1_series(params.a, params.b, params.c, params.z))


def hyp2f1_temme(rho_r: float, n: int) -> float:
    """
    Two-term large-n form of 2F1(1/2, 1/2; n + 1/2; (1 + rho_r)/2) with the
    Gamma(n + 1/2)/Gamma(n) factor removed, so callers can add it in log space.
    """
    if not -1.0 < rho_r < 1.0:
        raise DomainError(f"rho * r must lie in (-1, 1), got {rho_r}")
    if n < 2:
        raise DomainError(f"the asymptotic 2F1 form needs n >= 2, got {n}")
    return 1.0 / math.sqrt(n) + (2.0 + rho_r) / (8.0 * n ** 1.5)
