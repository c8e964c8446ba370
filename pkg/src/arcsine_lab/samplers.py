"""Seeded Monte Carlo samplers for the persistence event and the occupation time.

Three routes to the same persistence probability are provided:

* ``uniform`` -- Brownian motion (with drift) observed at ``m`` sorted uniform
  times, sampled exactly through Gaussian increments;
* ``laplace`` -- the random walk with asymmetric Laplace increments
  ``(E'/kappa - kappa E'')/sqrt(2)``;
* ``ballot`` -- coloured balls with success probability ``p``, stopped at the
  ``m``-th success, surviving while the running tally never drops below zero.

Random numbers come from counter-based Philox streams.  Trials are grouped in
fixed-size blocks; block ``b`` of sampler ``kind`` draws from the stream with
key ``(seed, kind)`` and counter offset ``b``.  A block is always generated in
full, so the outcome of trial ``i`` depends only on ``(seed, kind, m, mu, i)``
and never on the number of trials requested or on the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .analytic import drift_params

__all__ = [
    "KINDS",
    "EstimateWithCI",
    "OccupationSample",
    "TrialOutcome",
    "brownian_at_sorted_times",
    "estimate_event",
    "occupation_counts",
    "occupation_grid",
    "persist_ballot",
    "persist_laplace_walk",
    "persist_uniform",
    "simulate_events",
]

KINDS = ("uniform", "laplace", "ballot")
_STREAM_TAGS = {"uniform": 1, "laplace": 2, "ballot": 3, "grid": 4}

BLOCK_TRIALS = 1 << 16
# target number of Gaussian draws per occupation-grid block
GRID_BLOCK_DRAWS = 1 << 21

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class TrialOutcome:
    success: bool


@dataclass(frozen=True)
class OccupationSample:
    fraction: float
    steps: int


@dataclass(frozen=True)
class EstimateWithCI:
    estimate: float
    std_error: float
    trials: int
    successes: int

    @classmethod
    def from_counts(cls, successes: int, trials: int) -> "EstimateWithCI":
        q = successes / trials
        return cls(q, math.sqrt(q * (1.0 - q) / trials), trials, successes)


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < 1 << 64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def block_generator(seed: int, stream: str, block: int) -> np.random.Generator:
    """Generator for one block: Philox keyed by (seed, stream), counter word 2 = block."""
    key = _check_seed(seed) | (_STREAM_TAGS[stream] << 64)
    return np.random.Generator(np.random.Philox(counter=block << 128, key=key))


def brownian_at_sorted_times(times, mu: float = 0.0, seed=None, size: int | None = None):
    """Sample B_t + mu*t at the given increasing positive times.

    Values are built from independent Gaussian increments, so the joint law is
    exact.  ``seed`` may be an int or a ``numpy.random.Generator``.  With
    ``size`` set, returns an array of shape ``(size, len(times))``.
    """
    t = np.asarray(times, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValueError("times must be a nonempty 1-d sequence")
    if t[0] <= 0 or np.any(np.diff(t) <= 0):
        raise ValueError("times must be positive and strictly increasing")
    rng = np.random.default_rng(seed)
    shape = (1 if size is None else size, t.size)
    values = _brownian_rows(np.broadcast_to(t, shape), mu, rng)
    return values[0] if size is None else values


def _brownian_rows(times: np.ndarray, mu: float, rng: np.random.Generator) -> np.ndarray:
    # rows of ``times`` must already be sorted
    dt = np.diff(times, axis=1, prepend=0.0)
    values = rng.standard_normal(times.shape)
    values *= np.sqrt(dt)
    np.cumsum(values, axis=1, out=values)
    if mu:
        values += mu * times
    return values


def _uniform_block(m: int, mu: float, n: int, rng: np.random.Generator) -> np.ndarray:
    times = rng.random((n, m))
    times.sort(axis=1)
    return np.all(_brownian_rows(times, mu, rng) > 0, axis=1)


def _laplace_block(m: int, mu: float, n: int, rng: np.random.Generator) -> np.ndarray:
    kappa = drift_params(mu).kappa
    up = rng.standard_exponential((n, m))
    down = rng.standard_exponential((n, m))
    walk = np.cumsum((up / kappa - kappa * down) / SQRT2, axis=1)
    return np.all(walk > 0, axis=1)


def _ballot_block(m: int, mu: float, n: int, rng: np.random.Generator) -> np.ndarray:
    p = drift_params(mu).p
    # only the first 2m - 1 draws matter: later m-th successes imply w >= m
    draws = 2 * m - 1
    hits = rng.random((n, draws)) < p
    n_hits = np.cumsum(hits, axis=1)
    tally = 2 * n_hits - np.arange(1, draws + 1)
    reached = n_hits[:, -1] >= m
    # draws up to and including tau_m
    before_tau = np.concatenate([np.ones((n, 1), dtype=bool), n_hits[:, :-1] < m], axis=1)
    lead_kept = np.all((tally >= 0) | ~before_tau, axis=1)
    return reached & lead_kept


_BLOCK_SAMPLERS: dict[str, Callable[..., np.ndarray]] = {
    "uniform": _uniform_block,
    "laplace": _laplace_block,
    "ballot": _ballot_block,
}


def _check_m(m: int) -> None:
    if m < 1:
        raise ValueError(f"moment order must be >= 1, got {m}")


def _check_kind(kind: str) -> None:
    if kind not in _BLOCK_SAMPLERS:
        raise ValueError(f"unknown sampler kind {kind!r}; expected one of {KINDS}")


def _event_block(kind: str, m: int, mu: float, seed: int, block: int) -> np.ndarray:
    return _BLOCK_SAMPLERS[kind](m, mu, BLOCK_TRIALS, block_generator(seed, kind, block))


def _map_blocks(job: Callable[[int], np.ndarray], n_blocks: int, workers: int) -> list[np.ndarray]:
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if workers == 1 or n_blocks == 1:
        return [job(b) for b in range(n_blocks)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(job, range(n_blocks)))


def simulate_events(
    kind: str, m: int, mu: float, trials: int, seed: int, workers: int = 1
) -> np.ndarray:
    """Boolean outcome of each of ``trials`` persistence trials, in trial order."""
    _check_kind(kind)
    _check_m(m)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    seed = _check_seed(seed)
    mu = float(mu)
    n_blocks = -(-trials // BLOCK_TRIALS)
    blocks = _map_blocks(lambda b: _event_block(kind, m, mu, seed, b), n_blocks, workers)
    return np.concatenate(blocks)[:trials]


def estimate_event(
    kind: str, m: int, mu: float, trials: int, seed: int, workers: int = 1
) -> EstimateWithCI:
    outcomes = simulate_events(kind, m, mu, trials, seed, workers)
    return EstimateWithCI.from_counts(int(np.count_nonzero(outcomes)), trials)


def _single_trial(kind: str, m: int, mu: float, seed: int, index: int) -> TrialOutcome:
    _check_m(m)
    if index < 0:
        raise ValueError("trial index must be nonnegative")
    block, offset = divmod(index, BLOCK_TRIALS)
    return TrialOutcome(bool(_event_block(kind, m, float(mu), seed, block)[offset]))


def persist_uniform(m: int, mu: float, seed: int, index: int = 0) -> TrialOutcome:
    """Trial ``index``: is B^mu positive at all of m sorted uniform times?"""
    return _single_trial("uniform", m, mu, seed, index)


def persist_laplace_walk(m: int, mu: float, seed: int, index: int = 0) -> TrialOutcome:
    """Trial ``index``: do the first m partial sums of the Laplace walk stay positive?"""
    return _single_trial("laplace", m, mu, seed, index)


def persist_ballot(m: int, mu: float, seed: int, index: int = 0) -> TrialOutcome:
    """Trial ``index``: does the colour tally stay >= 0 up to the m-th success,
    with that success arriving by draw 2m - 1?
    """
    return _single_trial("ballot", m, mu, seed, index)


def _grid_block_trials(steps: int) -> int:
    return max(1, GRID_BLOCK_DRAWS // steps)


def _grid_block(mu: float, steps: int, seed: int, block: int) -> np.ndarray:
    n = _grid_block_trials(steps)
    rng = block_generator(seed, "grid", block)
    path = rng.standard_normal((n, steps))
    np.cumsum(path, axis=1, out=path)
    # sign of (S_k + mu k/sqrt(steps)) equals sign of B at time k/steps
    if mu:
        path += (mu / math.sqrt(steps)) * np.arange(1, steps + 1)
    return np.count_nonzero(path > 0, axis=1)


def occupation_counts(
    mu: float, steps: int, trials: int, seed: int, workers: int = 1
) -> np.ndarray:
    """Number of grid points k/steps (k = 1..steps) with B^mu above zero, per trial."""
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    seed = _check_seed(seed)
    mu = float(mu)
    n_blocks = -(-trials // _grid_block_trials(steps))
    blocks = _map_blocks(lambda b: _grid_block(mu, steps, seed, b), n_blocks, workers)
    return np.concatenate(blocks)[:trials]


def occupation_grid(mu: float, steps: int, seed: int, index: int = 0) -> OccupationSample:
    """Riemann approximation of the fraction of [0, 1] spent above zero (trial ``index``)."""
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    block, offset = divmod(index, _grid_block_trials(steps))
    count = _grid_block(float(mu), steps, _check_seed(seed), block)[offset]
    return OccupationSample(fraction=int(count) / steps, steps=steps)
