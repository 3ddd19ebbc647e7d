"""Monte Carlo oracle for the closed-form outage expressions.

Nothing here reuses the analytic machinery beyond the region samplers: each
trial places interferers, draws unit-mean exponential power gains for them
and for the reference link, flips activity coins, and checks the SINR
threshold directly. Closed forms and simulation meeting within a few
standard errors is the package's core correctness argument, so the two
sides are kept independent on purpose.

Reproducibility scheme: trials are processed in fixed blocks of 16384, and
block b of a run seeded s draws from a counter-based generator keyed by
(s, b). Results depend only on (config, trial count), not on how blocks are
distributed over workers, and each block is an integer hit count, so
multi-worker runs are bit-identical to serial ones.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .outage import ChannelParams
from .regions import Region, area, sample_distances

__all__ = [
    "BLOCK_TRIALS",
    "FixedCount",
    "PoissonCount",
    "CountModel",
    "SimConfig",
    "NetworkRealization",
    "Estimate",
    "simulate_outage",
    "simulate_conditional",
    "estimate_interference_factor",
    "draw_realizations",
]

BLOCK_TRIALS = 16384

_SEED_LIMIT = 1 << 64


@dataclass(frozen=True)
class FixedCount:
    """Exactly m interferers in every trial."""

    m: int

    def __post_init__(self):
        if not isinstance(self.m, (int, np.integer)) or isinstance(self.m, bool) or self.m < 0:
            raise DomainError(f"interferer count must be an integer >= 0, got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))


@dataclass(frozen=True)
class PoissonCount:
    """Poisson-distributed interferer count with the given spatial density."""

    intensity: float

    def __post_init__(self):
        if not (math.isfinite(self.intensity) and self.intensity >= 0.0):
            raise DomainError(f"intensity must be finite and >= 0, got {self.intensity!r}")


CountModel = FixedCount | PoissonCount


@dataclass(frozen=True)
class SimConfig:
    """Everything a simulation run depends on, including its seed."""

    region: Region
    params: ChannelParams
    count: CountModel
    trials: int
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.trials, (int, np.integer)) or isinstance(self.trials, bool):
            raise DomainError(f"trials must be an integer, got {self.trials!r}")
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials!r}")
        object.__setattr__(self, "trials", int(self.trials))
        if not isinstance(self.seed, (int, np.integer)) or isinstance(self.seed, bool):
            raise DomainError(f"seed must be an integer, got {self.seed!r}")
        if not (0 <= self.seed < _SEED_LIMIT):
            raise DomainError(f"seed must fit in 64 bits, got {self.seed!r}")
        object.__setattr__(self, "seed", int(self.seed))
        if not isinstance(self.count, (FixedCount, PoissonCount)):
            raise DomainError(
                f"count must be FixedCount or PoissonCount, got {type(self.count).__name__}"
            )


@dataclass(frozen=True)
class NetworkRealization:
    """One drawn network: interferer geometry, fading, and activity."""

    distances: np.ndarray
    gains: np.ndarray
    activity: np.ndarray
    reference_gain: float


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo estimate with its standard error."""

    mean: float
    std_error: float
    trials: int


def _block_rng(seed: int, block: int) -> np.random.Generator:
    key = np.array([seed, block], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _exponential(rng: np.random.Generator, n: int) -> np.ndarray:
    # Unit-mean exponentials via inverse CDF on [0, 1) uniforms; log1p keeps
    # precision in the deep tail and never sees log(0).
    return -np.log1p(-rng.random(n))


def _block_sizes(trials: int) -> list[int]:
    sizes = [BLOCK_TRIALS] * (trials // BLOCK_TRIALS)
    if trials % BLOCK_TRIALS:
        sizes.append(trials % BLOCK_TRIALS)
    return sizes


def _draw_network_block(
    cfg: SimConfig, block: int, size: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Draw one block's networks: counts, distances, gains, g0, activity.

    The draw order is fixed (counts, then all positions, then interferer
    gains, then reference gains, then activity flags) so any change shows up
    as a reproducibility break, not a silent reshuffle.
    """
    rng = _block_rng(cfg.seed, block)
    if isinstance(cfg.count, FixedCount):
        counts = np.full(size, cfg.count.m, dtype=np.int64)
    else:
        mean = cfg.count.intensity * area(cfg.region)
        counts = rng.poisson(mean, size).astype(np.int64)
    total = int(counts.sum())
    distances = sample_distances(cfg.region, total, rng)
    gains = _exponential(rng, total)
    reference = _exponential(rng, size)
    active = rng.random(total) < cfg.params.p
    return counts, distances, gains, reference, active


def _block_hits(cfg: SimConfig, block: int, size: int) -> int:
    counts, distances, gains, reference, active = _draw_network_block(cfg, block, size)
    params = cfg.params
    noise = 0.0 if math.isinf(params.snr) else 1.0 / params.snr
    received = np.where(active, gains * distances ** (-params.alpha), 0.0)
    owner = np.repeat(np.arange(size), counts)
    aggregate = np.bincount(owner, weights=received, minlength=size)
    return int(np.count_nonzero(reference <= params.beta * (noise + aggregate)))


def simulate_outage(cfg: SimConfig, workers: int = 1) -> Estimate:
    """Monte Carlo outage probability for the configured network.

    The outage event for a trial is g0 <= beta * (1/snr + sum of received
    interference powers). workers only spreads blocks over threads; the
    estimate is bit-identical for any worker count.
    """
    _check_workers(workers)
    sizes = _block_sizes(cfg.trials)
    jobs = list(enumerate(sizes))
    if workers == 1:
        hits = sum(_block_hits(cfg, b, n) for b, n in jobs)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(lambda job: _block_hits(cfg, *job), jobs))
    return _binomial_estimate(hits, cfg.trials)


def simulate_conditional(
    params: ChannelParams,
    distances,
    trials: int,
    seed: int = 0,
    workers: int = 1,
) -> Estimate:
    """Monte Carlo check of conditional_outage at fixed interferer positions.

    Only fading and activity are random here. Uses the same block scheme as
    simulate_outage, with per-block draw order: interferer gains, reference
    gains, activity flags.
    """
    _check_workers(workers)
    r = np.asarray(distances, dtype=float)
    if r.ndim > 1:
        raise DomainError("distances must be a flat sequence")
    if np.any(~np.isfinite(r)) or np.any(r <= 0.0):
        raise DomainError("interferer distances must be finite and positive")
    if not isinstance(trials, (int, np.integer)) or isinstance(trials, bool) or trials < 1:
        raise DomainError(f"trials must be an integer >= 1, got {trials!r}")
    if not isinstance(seed, (np.integer, int)) or not (0 <= int(seed) < _SEED_LIMIT):
        raise DomainError(f"seed must fit in 64 bits, got {seed!r}")
    trials = int(trials)
    attenuation = r ** (-params.alpha)
    noise = 0.0 if math.isinf(params.snr) else 1.0 / params.snr
    m = len(r)

    def block_hits(job: tuple[int, int]) -> int:
        block, size = job
        rng = _block_rng(int(seed), block)
        gains = _exponential(rng, size * m).reshape(size, m)
        reference = _exponential(rng, size)
        active = rng.random((size, m)) < params.p
        aggregate = (gains * attenuation * active).sum(axis=1)
        return int(np.count_nonzero(reference <= params.beta * (noise + aggregate)))

    jobs = list(enumerate(_block_sizes(trials)))
    if workers == 1:
        hits = sum(block_hits(job) for job in jobs)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(block_hits, jobs))
    return _binomial_estimate(hits, trials)


def estimate_interference_factor(
    region: Region,
    params: ChannelParams,
    samples: int,
    seed: int = 0,
) -> Estimate:
    """Sample mean of r^alpha / (beta + r^alpha) with its standard error.

    Serial over blocks so the accumulation order, and therefore the float
    result, is fixed by (region, params, samples, seed) alone.
    """
    if not isinstance(samples, (int, np.integer)) or isinstance(samples, bool) or samples < 2:
        raise DomainError(f"need at least 2 samples, got {samples!r}")
    if not isinstance(seed, (np.integer, int)) or not (0 <= int(seed) < _SEED_LIMIT):
        raise DomainError(f"seed must fit in 64 bits, got {seed!r}")
    samples = int(samples)
    total = 0.0
    total_sq = 0.0
    for block, size in enumerate(_block_sizes(samples)):
        rng = _block_rng(int(seed), block)
        r = sample_distances(region, size, rng)
        ra = r**params.alpha
        vals = ra / (params.beta + ra)
        total += float(vals.sum())
        total_sq += float((vals * vals).sum())
    mean = total / samples
    variance = max(total_sq - samples * mean * mean, 0.0) / (samples - 1)
    return Estimate(mean, math.sqrt(variance / samples), samples)


def draw_realizations(cfg: SimConfig, n: int) -> list[NetworkRealization]:
    """First n networks of the run, exactly as the simulator would draw them.

    Lets tests and demos look at the raw material behind simulate_outage:
    the k-th realization here is the k-th trial of a simulate_outage run
    with the same config.
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise DomainError(f"need n >= 1, got {n!r}")
    n = int(min(n, cfg.trials))
    out: list[NetworkRealization] = []
    for block, size in enumerate(_block_sizes(cfg.trials)):
        counts, distances, gains, reference, active = _draw_network_block(
            cfg, block, size
        )
        stops = np.cumsum(counts)
        starts = stops - counts
        for t in range(size):
            lo, hi = int(starts[t]), int(stops[t])
            out.append(
                NetworkRealization(
                    distances=distances[lo:hi].copy(),
                    gains=gains[lo:hi].copy(),
                    activity=active[lo:hi].copy(),
                    reference_gain=float(reference[t]),
                )
            )
            if len(out) == n:
                return out
    return out


def _check_workers(workers: int) -> None:
    if not isinstance(workers, (int, np.integer)) or isinstance(workers, bool) or workers < 1:
        raise DomainError(f"workers must be an integer >= 1, got {workers!r}")


def _binomial_estimate(hits: int, trials: int) -> Estimate:
    mean = hits / trials
    return Estimate(mean, math.sqrt(mean * (1.0 - mean) / trials), trials)
