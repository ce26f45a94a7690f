"""
Seeded Monte Carlo estimates for the pick-up stick probabilities.

Trials are split into fixed-size chunks. Chunk ``i`` draws from its own PCG64
stream keyed by ``(seed, i)``, so the success count depends only on
``(n, k, trials, seed, chunk_size)``; the thread pool that runs the chunks only
changes wall time.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, require

__all__ = [
    "DEFAULT_CHUNK_SIZE",
    "StickSample",
    "SpacingsSample",
    "TrialConfig",
    "Estimate",
    "no_kgon_indicator",
    "can_form_ngon",
    "no_kgon_mask",
    "estimate",
    "estimate_cannot_ngon",
    "wilson_interval",
    "spacings_equivalence_sample",
    "order_statistics_two_ways",
    "default_threads",
]

DEFAULT_CHUNK_SIZE = 1 << 16
THREADS_ENV = "PICKUP_STICKS_THREADS"
_Z95 = 1.959963984540054


@dataclass(frozen=True)
class StickSample:
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        v = self.values
        if any(x < 0.0 or x > 1.0 for x in v):
            raise ContractViolation("stick lengths must lie in [0, 1]")
        if any(a > b for a, b in zip(v, v[1:])):
            raise ContractViolation("stick sample must be sorted ascending")

    @classmethod
    def from_unsorted(cls, values) -> StickSample:
        return cls(tuple(sorted(float(x) for x in values)))

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class SpacingsSample:
    spacings: tuple[float, ...]
    total: float

    def normalized_cumsum(self) -> tuple[float, ...]:
        """The first ``n`` normalized partial sums, i.e. the sorted uniforms."""
        partial = np.cumsum(self.spacings)[:-1] / self.total
        return tuple(float(x) for x in np.minimum(partial, 1.0))


@dataclass(frozen=True)
class TrialConfig:
    n: int
    k: int
    trials: int
    seed: int = 0
    chunk_size: int = DEFAULT_CHUNK_SIZE

    def __post_init__(self) -> None:
        require(self.n >= 1, f"n must be >= 1, got {self.n}")
        require(self.k >= 3, f"k must be >= 3, got {self.k}")
        require(self.trials >= 1, f"trials must be >= 1, got {self.trials}")
        require(0 <= self.seed < 2**64, f"seed must be an unsigned 64-bit integer, got {self.seed}")
        require(self.chunk_size >= 1, f"chunk_size must be >= 1, got {self.chunk_size}")

    @property
    def n_chunks(self) -> int:
        return -(-self.trials // self.chunk_size)


@dataclass(frozen=True)
class Estimate:
    p_hat: float
    successes: int
    trials: int
    ci_low: float
    ci_high: float

    @property
    def sigma(self) -> float:
        return math.sqrt(self.p_hat * (1.0 - self.p_hat) / self.trials)

    def within(self, exact: float, n_sigma: float = 4.0) -> bool:
        """Whether ``p_hat`` sits within ``n_sigma`` binomial sigmas of ``exact``."""
        tol = n_sigma * math.sqrt(exact * (1.0 - exact) / self.trials)
        return abs(self.p_hat - exact) <= tol


def wilson_interval(successes: int, trials: int, z: float = _Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    p = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    centre = (p + z2 / (2 * trials)) / denom
    half = z * math.sqrt(p * (1.0 - p) / trials + z2 / (4 * trials * trials)) / denom
    # the interval always contains p in exact arithmetic; clamp rounding slop
    return max(0.0, min(centre - half, p)), min(1.0, max(centre + half, p))


def no_kgon_indicator(sample: StickSample, k: int) -> bool:
    """True iff every window of ``k`` consecutive sorted lengths is degenerate or worse.

    A window fails to form a k-gon when its first ``k - 1`` lengths sum to at most
    the last one. Ties count as "no k-gon".
    """
    require(k >= 3, f"k must be >= 3, got {k}")
    v = sample.values
    if any(a > b for a, b in zip(v, v[1:])):
        raise ContractViolation("stick sample must be sorted ascending")
    return all(sum(v[i: i + k - 1]) <= v[i + k - 1] for i in range(len(v) - k + 1))


def can_form_ngon(sample: StickSample) -> bool:
    """Whether all sticks together close a non-degenerate polygon."""
    v = sample.values
    require(len(v) >= 3, f"a polygon needs at least 3 sticks, got {len(v)}")
    largest = max(v)
    return largest < sum(v) - largest


def no_kgon_mask(sorted_rows: np.ndarray, k: int) -> np.ndarray:
    """Vectorized :func:`no_kgon_indicator` over rows that are already sorted."""
    n = sorted_rows.shape[1]
    ok = np.ones(sorted_rows.shape[0], dtype=bool)
    for i in range(n - k + 1):
        # left-to-right accumulation so rounding matches the scalar indicator
        window = sorted_rows[:, i].copy()
        for j in range(i + 1, i + k - 1):
            window += sorted_rows[:, j]
        ok &= window <= sorted_rows[:, i + k - 1]
    return ok


def _chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def _chunk_len(trials: int, chunk_size: int, chunk: int) -> int:
    return min(chunk_size, trials - chunk * chunk_size)


def _count_no_kgon(config: TrialConfig, chunk: int) -> int:
    m = _chunk_len(config.trials, config.chunk_size, chunk)
    rows = _chunk_rng(config.seed, chunk).random((m, config.n))
    rows.sort(axis=1)
    return int(np.count_nonzero(no_kgon_mask(rows, config.k)))


def _count_cannot_ngon(config: TrialConfig, chunk: int) -> int:
    m = _chunk_len(config.trials, config.chunk_size, chunk)
    rows = _chunk_rng(config.seed, chunk).random((m, config.n))
    largest = rows.max(axis=1)
    return int(np.count_nonzero(largest >= rows.sum(axis=1) - largest))


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _run_chunks(config: TrialConfig, counter, threads: int | None) -> int:
    threads = threads or default_threads()
    chunks = range(config.n_chunks)
    if threads == 1 or config.n_chunks == 1:
        return sum(counter(config, c) for c in chunks)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(lambda c: counter(config, c), chunks))


def _finish(successes: int, trials: int) -> Estimate:
    lo, hi = wilson_interval(successes, trials)
    return Estimate(p_hat=successes / trials, successes=successes, trials=trials, ci_low=lo, ci_high=hi)


def estimate(config: TrialConfig, threads: int | None = None) -> Estimate:
    """Estimate the probability that no ``k`` of ``n`` uniform sticks form a k-gon.

    When ``n < k`` the event is certain and no sampling is done; the returned
    interval is the single point 1.
    """
    if config.n < config.k:
        return Estimate(1.0, config.trials, config.trials, 1.0, 1.0)
    return _finish(_run_chunks(config, _count_no_kgon, threads), config.trials)


def estimate_cannot_ngon(config: TrialConfig, threads: int | None = None) -> Estimate:
    """Estimate the probability that all ``n`` sticks cannot close an n-gon (``k`` unused)."""
    require(config.n >= 3, f"a polygon needs at least 3 sticks, got {config.n}")
    return _finish(_run_chunks(config, _count_cannot_ngon, threads), config.trials)


def order_statistics_two_ways(n: int, replicates: int, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Sorted uniforms drawn by direct sorting and by normalized exponential sums.

    Returns two ``(replicates, n)`` arrays; column ``j`` of each holds draws of
    the ``(j+1)``-th order statistic. The two samplers use independent streams.
    """
    require(n >= 1, f"n must be >= 1, got {n}")
    require(replicates >= 1, f"replicates must be >= 1, got {replicates}")
    direct_rng, spacing_rng = (np.random.Generator(np.random.PCG64(s))
                               for s in np.random.SeedSequence(seed).spawn(2))
    direct = np.sort(direct_rng.random((replicates, n)), axis=1)
    x = spacing_rng.standard_exponential((replicates, n + 1))
    partial = np.cumsum(x, axis=1)
    via_spacings = partial[:, :n] / partial[:, n:]
    return direct, via_spacings


def spacings_equivalence_sample(n: int, seed: int = 0) -> tuple[StickSample, SpacingsSample]:
    """One draw of sorted uniforms from each of the two samplers."""
    require(n >= 1, f"n must be >= 1, got {n}")
    direct_rng, spacing_rng = (np.random.Generator(np.random.PCG64(s))
                               for s in np.random.SeedSequence(seed).spawn(2))
    sticks = StickSample(tuple(float(u) for u in np.sort(direct_rng.random(n))))
    x = spacing_rng.standard_exponential(n + 1)
    # Exp(1) draws are positive with probability one; guard the measure-zero case
    x = np.maximum(x, np.finfo(float).tiny)
    return sticks, SpacingsSample(tuple(float(v) for v in x), float(x.sum()))
