import math
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from sldcorr.core.config import settings
from sldcorr.core.exceptions import DomainError
from sldcorr.schemas.common import Scenario, ScenarioKind
from sldcorr.schemas.mc_schema import McEstimate
from sldcorr.services.densities_oracle import MIN_SAMPLE_SIZE

logger = logging.getLogger(__name__)


def _draw(s: Scenario, n: int, size: int, stream: np.random.Generator) -> np.ndarray:
    x = stream.standard_normal((size, n))
    z = stream.standard_normal((size, n))
    if s.kind is ScenarioKind.GAUSSIAN_CENTERED and s.rho != 0.0:
        y = s.rho * x + math.sqrt(1.0 - s.rho * s.rho) * z
    else:
        # spherical X with an independent Y; any spherical law gives the same r_n law
        y = z
    if not s.known_mean:
        x = x - x.mean(axis=1, keepdims=True)
        y = y - y.mean(axis=1, keepdims=True)
    sxy = np.einsum("ij,ij->i", x, y)
    sxx = np.einsum("ij,ij->i", x, x)
    syy = np.einsum("ij,ij->i", y, y)
    denom = np.sqrt(sxx * syy)
    r = np.full(size, np.nan)
    ok = denom > 0.0
    r[ok] = np.clip(sxy[ok] / denom[ok], -1.0, 1.0)
    return r


def sample_coefficients(s: Scenario, n: int, size: int, stream: np.random.Generator) -> np.ndarray:
    """
    `size` independent draws of r_n (or r~_n). Degenerate samples with a zero
    sum of squares are redrawn.
    """
    if n < MIN_SAMPLE_SIZE:
        raise DomainError(f"sample size must be at least {MIN_SAMPLE_SIZE}, got n={n}")
    r = _draw(s, n, size, stream)
    bad = np.isnan(r)
    while bad.any():
        logger.debug(f"Redrawing {int(bad.sum())} degenerate samples")
        r[bad] = _draw(s, n, int(bad.sum()), stream)
        bad = np.isnan(r)
    return r


def sample_coefficient(s: Scenario, n: int, stream: np.random.Generator) -> float:
    return float(sample_coefficients(s, n, 1, stream)[0])


def _count_partition(s: Scenario, n: int, c: float, samples: int, seed_seq: np.random.SeedSequence, index: int) -> int:
    stream = np.random.Generator(np.random.Philox(seed_seq))
    chunk = settings.MC_CHUNK
    hits = 0
    done = 0
    while done < samples:
        size = min(chunk, samples - done)
        hits += int(np.count_nonzero(sample_coefficients(s, n, size, stream) >= c))
        done += size
    logger.debug(f"Partition {index}: {hits} / {samples} draws at or above c={c}")
    return hits


def tail_mc(
    s: Scenario,
    n: int,
    c: float,
    samples: int,
    seed: Optional[int] = None,
    partitions: Optional[int] = None,
) -> McEstimate:
    """
    Fraction of draws with r_n >= c and its binomial standard error.

    The master seed is split into one counter-based Philox stream per partition,
    so the estimate depends only on (seed, samples, partitions) and not on how
    the partitions are scheduled across threads.
    """
    if samples < 1:
        raise DomainError(f"samples must be at least 1, got {samples}")
    seed = settings.MC_SEED if seed is None else seed
    partitions = partitions or settings.MC_PARTITIONS
    if partitions < 1:
        raise DomainError(f"partitions must be at least 1, got {partitions}")
    partitions = min(partitions, samples)

    children = np.random.SeedSequence(seed).spawn(partitions)
    base, extra = divmod(samples, partitions)
    sizes = [base + (1 if i < extra else 0) for i in range(partitions)]

    with ThreadPoolExecutor(max_workers=partitions) as executor:
        counts = list(executor.map(
            lambda args: _count_partition(s, n, c, *args),
            [(size, child, i) for i, (size, child) in enumerate(zip(sizes, children))],
        ))

    hits = sum(counts)
    p_hat = hits / samples
    std_err = math.sqrt(p_hat * (1.0 - p_hat) / samples)
    logger.info(f"MC {s.label} n={n} c={c}: p_hat={p_hat:.6e} +/- {std_err:.2e} ({samples} draws, {partitions} partitions)")
    return McEstimate(p_hat=p_hat, std_err=std_err, samples=samples, seed=seed, partitions=partitions)
