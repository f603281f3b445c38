import math
from itertools import product

import mpmath
import numpy as np
import pytest
from pydantic import ValidationError

from sldcorr.core.exceptions import DomainError, NonConvergenceError, NumericalError
from sldcorr.schemas.specfun_schema import BellIndex, Hyp2F1Params
from sldcorr.services import specfun
from sldcorr.services.specfun import (bell_complete, bell_partial, bell_table, double_factorial_odd,
                                      hyp2f1, hyp2f1_series, hyp2f1_temme, log_gamma, log_gamma_ratio)
from tests.conftest import log_quad


# --- log_gamma ---------------------------------------------------------------

@pytest.mark.parametrize("x, expected", [(1.0, 0.0), (0.5, 0.5723649429247001), (10.0, 12.801827480081469)])
def test_log_gamma_values(x, expected):
    assert log_gamma(x) == pytest.approx(expected, abs=1e-12)


def test_log_gamma_matches_arbitrary_precision():
    for x in np.geomspace(0.5, 1e6, 60):
        reference = float(mpmath.loggamma(mpmath.mpf(float(x))))
        assert abs(log_gamma(float(x)) - reference) <= 1e-13 * max(1.0, abs(reference))


def test_log_gamma_duplication_identity():
    for z in np.linspace(1.0, 100.0, 199):
        residual = (
            log_gamma(z) + log_gamma(z + 0.5) + (2 * z - 1) * math.log(2.0)
            - 0.5 * math.log(math.pi) - log_gamma(2 * z)
        )
        assert abs(residual) < 1e-11


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
def test_log_gamma_rejects_non_positive(x):
    with pytest.raises(DomainError):
        log_gamma(x)


def test_log_gamma_ratio():
    assert log_gamma_ratio(7.3, 7.3) == 0.0
    assert log_gamma_ratio(49.5, 49) == pytest.approx(0.5 * math.log(49.25), rel=5e-3)
    # Gamma(9.5) / 8! = 0.5 * 1.5 * ... * 8.5 * sqrt(pi) / 40320
    assert log_gamma_ratio(9.5, 9) == pytest.approx(math.log(math.gamma(9.5) / math.gamma(9)), rel=1e-13)
    assert log_gamma_ratio(9.5, 9) == pytest.approx(1.0847, abs=1e-4)
    assert math.isfinite(log_gamma_ratio(1e6, 2.5))
    with pytest.raises(DomainError):
        log_gamma_ratio(0.0, 1.0)


# --- double factorial ------------------------------------------------------------

@pytest.mark.parametrize("m, expected", [(0, 1), (1, 3), (2, 15), (4, 945)])
def test_double_factorial_odd(m, expected):
    assert double_factorial_odd(m) == expected


def test_double_factorial_odd_overflow_and_domain():
    with pytest.raises(NumericalError):
        double_factorial_odd(300)
    with pytest.raises(DomainError):
        double_factorial_odd(-1)


# --- Bell polynomials ------------------------------------------------------------

def _partitions(n, k, largest=None):
    """Multiplicity vectors {size: count} of partitions of n into k blocks."""
    largest = n if largest is None else largest
    if n == 0:
        if k == 0:
            yield {}
        return
    if k == 0:
        return
    for size in range(min(n, largest), 0, -1):
        for rest in _partitions(n - size, k - 1, size):
            counts = dict(rest)
            counts[size] = counts.get(size, 0) + 1
            yield counts


def _bell_by_enumeration(n, k, x):
    total = 0.0
    for counts in _partitions(n, k):
        term = math.factorial(n)
        for size, count in counts.items():
            term /= math.factorial(count) * math.factorial(size) ** count
            term *= x[size - 1] ** count
        total += term
    return total


def test_bell_partial_simple_cases():
    x = [1.7, -0.4, 2.2, 0.9]
    assert bell_partial(BellIndex(n=4, k=4), x) == pytest.approx(1.7 ** 4)
    assert bell_partial(BellIndex(n=3, k=2), x[:2]) == pytest.approx(3 * 1.7 * -0.4)
    assert bell_partial(BellIndex(n=0, k=0), []) == 1.0
    assert bell_partial(BellIndex(n=5, k=0), x) == 0.0


def test_bell_partial_matches_partition_enumeration(rng):
    x = rng.normal(size=8)
    for n in range(1, 9):
        for k in range(1, n + 1):
            expected = _bell_by_enumeration(n, k, x)
            assert bell_partial(BellIndex(n=n, k=k), x) == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_bell_table_recurrence(rng):
    x = rng.normal(size=10)
    table = bell_table(10, x)
    for n, k in product(range(1, 11), range(1, 11)):
        if k > n:
            assert table[n, k] == 0.0
            continue
        recurrence = sum(math.comb(n - 1, j - 1) * x[j - 1] * table[n - j, k - 1] for j in range(1, n - k + 2))
        assert table[n, k] == pytest.approx(recurrence, rel=1e-12, abs=1e-12)


def test_bell_numbers():
    ones = [1.0] * 8
    expected = [1, 1, 2, 5, 15, 52, 203, 877, 4140]
    assert [bell_complete(n, ones) for n in range(9)] == expected
    assert [sum(bell_partial(BellIndex(n=n, k=k), ones) for k in range(n + 1)) for n in range(6)] == expected[:6]


def test_bell_argument_errors():
    with pytest.raises(ValidationError):
        BellIndex(n=2, k=3)
    with pytest.raises(DomainError):
        bell_partial(BellIndex(n=5, k=2), [1.0, 2.0])


# --- 2F1 ---------------------------------------------------------------------------

def test_hyp2f1_closed_forms():
    assert hyp2f1(Hyp2F1Params(a=0.5, b=0.5, c=1.5, z=0.0)) == 1.0
    assert hyp2f1(Hyp2F1Params(a=0.5, b=0.5, c=1.5, z=0.25)) == pytest.approx(math.pi / 3, rel=1e-12)
    assert hyp2f1(Hyp2F1Params(a=1.0, b=1.0, c=2.0, z=0.5)) == pytest.approx(2 * math.log(2.0), rel=1e-12)


def test_hyp2f1_against_arbitrary_precision():
    for n, z in product((3, 10, 25, 60), (0.1, 0.5, 0.9, -0.7)):
        expected = float(mpmath.hyp2f1(0.5, 0.5, n + 0.5, z))
        assert hyp2f1(Hyp2F1Params(a=0.5, b=0.5, c=n + 0.5, z=z)) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("n", [3, 8, 20, 60])
@pytest.mark.parametrize("z", [0.1, 0.5, 0.9])
def test_hyp2f1_euler_integral(n, z):
    # 2F1(a, 1/2; c; z) = Gamma(c) / (Gamma(1/2) Gamma(c - 1/2)) int_0^1 2 (1-u^2)^(c-3/2) (1 - z u^2)^(-a) du
    a, b, c = 0.5, 0.5, n + 0.5
    log_integral = log_quad(
        lambda u: math.log(2.0) + (c - b - 1) * np.log1p(-u * u) - a * np.log1p(-z * u * u), 0.0, 1.0
    )
    log_constant = log_gamma(c) - log_gamma(b) - log_gamma(c - b)
    expected = math.exp(log_constant + log_integral)
    assert hyp2f1(Hyp2F1Params(a=a, b=b, c=c, z=z)) == pytest.approx(expected, rel=1e-9)


def test_hyp2f1_series_is_vectorized():
    z = np.array([0.0, 0.2, 0.6])
    values = hyp2f1_series(0.5, 0.5, 10.5, z)
    assert values.shape == (3,)
    assert values[0] == 1.0
    assert values[1] < values[2]


def test_hyp2f1_domain():
    with pytest.raises(ValidationError):
        Hyp2F1Params(a=0.5, b=0.5, c=-2.0, z=0.3)
    with pytest.raises(ValidationError):
        Hyp2F1Params(a=0.5, b=0.5, c=1.5, z=1.0)
    with pytest.raises(DomainError):
        hyp2f1_series(0.5, 0.5, 1.5, np.array([0.2, 1.2]))


def test_hyp2f1_non_convergence_reports_partial(monkeypatch):
    monkeypatch.setattr(specfun.settings, "HYP2F1_MAX_TERMS", 3)
    with pytest.raises(NonConvergenceError) as excinfo:
        hyp2f1_series(0.5, 0.5, 1.5, 0.9)
    assert excinfo.value.partial is not None
    assert float(excinfo.value.partial) > 1.0


# --- Large-n form ---------------------------------------------------------------

def test_hyp2f1_temme_values():
    assert hyp2f1_temme(0.3, 100) == pytest.approx(0.10028750, abs=1e-8)
    assert hyp2f1_temme(0.0, 10 ** 8) * 1e4 == pytest.approx(1.0, rel=1e-8)


def test_hyp2f1_temme_residual_shrinks():
    def residual(n):
        series = hyp2f1(Hyp2F1Params(a=0.5, b=0.5, c=n + 0.5, z=(1 + 0.3) / 2))
        return abs(hyp2f1_temme(0.3, n) * math.exp(log_gamma_ratio(n + 0.5, n)) / series - 1.0)

    assert residual(50) < residual(25)
    assert residual(50) < 1e-3


def test_hyp2f1_temme_domain():
    with pytest.raises(DomainError):
        hyp2f1_temme(1.0, 10)
    with pytest.raises(DomainError):
        hyp2f1_temme(0.2, 1)
