import math

import numpy as np
import pytest
from scipy import stats

from sldcorr.core.exceptions import DomainError
from sldcorr.schemas.common import SPHERICAL_CENTERED, SPHERICAL_KNOWN_MEAN, gaussian_centered
from sldcorr.services.densities_oracle import tail_exact
from sldcorr.services.montecarlo import sample_coefficient, sample_coefficients, tail_mc


def draw_many(s, n, size, rng, chunk=100_000):
    return np.concatenate([sample_coefficients(s, n, min(chunk, size - start), rng) for start in range(0, size, chunk)])


def test_draws_lie_in_range(scenario, rng):
    r = sample_coefficients(scenario, 5, 20000, rng)
    assert r.shape == (20000,)
    assert np.all(np.abs(r) <= 1.0)
    assert not np.any(np.isnan(r))
    assert -1.0 <= sample_coefficient(scenario, 8, rng) <= 1.0


def test_large_sample_concentrates_at_rho(rng):
    r = sample_coefficients(gaussian_centered(0.3), 10_000, 200, rng)
    assert np.mean(np.abs(r - 0.3) <= 0.05) >= 0.99


def test_sampling_rejects_small_n(rng):
    with pytest.raises(DomainError):
        sample_coefficients(SPHERICAL_CENTERED, 4, 10, rng)


def test_histogram_matches_density(rng):
    n, size = 20, 1_000_000
    r = draw_many(SPHERICAL_CENTERED, n, size, rng)
    edges = np.linspace(-1.0, 1.0, 51)
    observed, _ = np.histogram(r, bins=edges)

    inner = edges[1:-1]
    cdf = stats.t.cdf(math.sqrt(n - 2) * inner / np.sqrt(1 - inner ** 2), n - 2)
    probabilities = np.diff(np.concatenate([[0.0], cdf, [1.0]]))
    # bins at the ends are nearly empty; pool them with their neighbours
    keep = probabilities * size >= 5
    expected = probabilities[keep] * size
    counts = observed[keep].astype(float)
    expected *= counts.sum() / expected.sum()
    assert stats.chisquare(counts, expected).pvalue > 1e-3


@pytest.mark.parametrize("s, dof", [(SPHERICAL_CENTERED, 18), (SPHERICAL_KNOWN_MEAN, 19)], ids=["centered", "known"])
def test_studentized_coefficient(s, dof, rng):
    n = 20
    r = draw_many(s, n, 1_000_000, rng)
    t = math.sqrt(dof) * r / np.sqrt(1 - r ** 2)
    assert stats.kstest(t, stats.t(dof).cdf).statistic < 0.002


# --- tail_mc -----------------------------------------------------------------

def test_full_mass():
    estimate = tail_mc(SPHERICAL_CENTERED, 10, -1.0, 5000, seed=1)
    assert estimate.p_hat == 1.0
    assert estimate.std_err == 0.0


def test_same_seed_same_estimate():
    first = tail_mc(SPHERICAL_CENTERED, 20, 0.5, 50_000, seed=11, partitions=4)
    second = tail_mc(SPHERICAL_CENTERED, 20, 0.5, 50_000, seed=11, partitions=4)
    assert first == second
    other = tail_mc(SPHERICAL_CENTERED, 20, 0.5, 50_000, seed=12, partitions=4)
    assert other.p_hat != first.p_hat


def test_estimate_record():
    estimate = tail_mc(SPHERICAL_CENTERED, 20, 0.5, 1000, seed=3, partitions=3)
    assert estimate.samples == 1000
    assert estimate.seed == 3
    assert estimate.partitions == 3
    assert estimate.std_err == pytest.approx(math.sqrt(estimate.p_hat * (1 - estimate.p_hat) / 1000))


def test_more_partitions_than_samples():
    estimate = tail_mc(SPHERICAL_CENTERED, 10, 0.2, 3, seed=5, partitions=8)
    assert estimate.partitions == 3
    assert estimate.p_hat in (0.0, 1 / 3, 2 / 3, 1.0)


def test_spot_value_agrees_with_quadrature():
    estimate = tail_mc(SPHERICAL_CENTERED, 20, 0.5, 1_000_000, seed=7)
    assert abs(estimate.p_hat - 1.2384779e-2) <= 3 * estimate.std_err


def test_invalid_budget():
    with pytest.raises(DomainError):
        tail_mc(SPHERICAL_CENTERED, 20, 0.5, 0)
    with pytest.raises(DomainError):
        tail_mc(SPHERICAL_CENTERED, 20, 0.5, 10, partitions=-1)


@pytest.mark.slow
@pytest.mark.parametrize("n", [10, 20, 50])
@pytest.mark.parametrize("c", [0.3, 0.5])
def test_agreement_with_quadrature_grid(scenario, n, c):
    estimate = tail_mc(scenario, n, c, 1_000_000, seed=2024)
    exact = math.exp(tail_exact(scenario, n, c).log_value)
    assert abs(estimate.p_hat - exact) <= 3 * estimate.std_err
