"""Oracles and statistical checks: ballot enumeration, z-tests, KS, claim-check."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

from .analytic import (
    drift_params,
    exp_horizon_mean,
    fixed_horizon_mean,
    moment_drift,
)
from .exact import BallotInstance, catalan_moment
from .samplers import KINDS, EstimateWithCI, _check_seed, estimate_event, occupation_counts

__all__ = [
    "ClaimCheckReport",
    "EnumerationResult",
    "KSResult",
    "brute_ballot",
    "claim_check",
    "kolmogorov_sf",
    "ks_arcsine",
    "ks_arcsine_selftest",
    "ks_statistic",
    "reference_moment",
    "ztest_moment",
]

MAX_ENUMERATION_VOTES = 24
Z_BAND = 4.0


@dataclass(frozen=True)
class EnumerationResult:
    favorable: int
    total: int
    probability: Fraction


@dataclass(frozen=True)
class KSResult:
    statistic: float
    p_value: float
    n: int


@dataclass(frozen=True)
class ClaimCheckReport:
    m: int
    mu: float
    formula_value: float
    laplace_estimate: EstimateWithCI
    ballot_estimate: EstimateWithCI
    uniform_estimate: EstimateWithCI
    fixed_horizon_oracle: Optional[float] = None
    exp_horizon_oracle: Optional[float] = None

    def estimates(self) -> dict[str, EstimateWithCI]:
        return {
            "laplace": self.laplace_estimate,
            "ballot": self.ballot_estimate,
            "uniform": self.uniform_estimate,
        }

    def internal_consistency(self) -> dict[str, float]:
        """z-scores of the laplace and ballot estimates against the formula.

        The uniform estimate joins only at mu = 0, where every notion of the
        moment coincides.
        """
        kinds = ["laplace", "ballot"] + (["uniform"] if self.mu == 0 else [])
        est = self.estimates()
        return {k: _zscore(est[k], self.formula_value) for k in kinds}

    def consistent(self) -> bool:
        return all(abs(z) < Z_BAND for z in self.internal_consistency().values())


def brute_ballot(instance: BallotInstance, weak: bool = False) -> EnumerationResult:
    """Enumerate every placement of A's votes among the a + b counting slots."""
    a, b = instance.a, instance.b
    n = a + b
    if n > MAX_ENUMERATION_VOTES:
        raise ValueError(f"enumeration limited to a + b <= {MAX_ENUMERATION_VOTES}, got {n}")
    favorable = total = 0
    for a_slots in combinations(range(n), a):
        total += 1
        slots = set(a_slots)
        lead = 0
        for i in range(n):
            lead += 1 if i in slots else -1
            if lead < 0 or (lead == 0 and not weak):
                break
        else:
            favorable += 1
    return EnumerationResult(favorable, total, Fraction(favorable, total))


def reference_moment(m: int, mu: float) -> float:
    """Exact arcsine moment at mu = 0, the drift ballot-sum otherwise."""
    if mu == 0:
        return float(catalan_moment(m))
    return moment_drift(m, mu)


def _zscore(est: EstimateWithCI, reference: float) -> float:
    diff = est.estimate - reference
    if est.std_error == 0:
        return 0.0 if diff == 0 else math.copysign(math.inf, diff)
    return diff / est.std_error


def ztest_moment(
    kind: str, m: int, mu: float, trials: int, seed: int, workers: int = 1
) -> tuple[float, bool]:
    if kind not in KINDS:
        raise ValueError(f"unknown sampler kind {kind!r}")
    if kind == "uniform" and mu != 0:
        raise ValueError("uniform-time sampler has no asserted reference at nonzero drift; use claim_check")
    if trials < 10_000:
        raise ValueError(f"z-test needs at least 10^4 trials, got {trials}")
    est = estimate_event(kind, m, mu, trials, seed, workers)
    z = _zscore(est, reference_moment(m, mu))
    return z, abs(z) < Z_BAND


def kolmogorov_sf(lam: float) -> float:
    """Asymptotic P(sqrt(n) D_n > lam): 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lam^2)."""
    if lam <= 0:
        return 1.0
    # the alternating series converges too slowly near 0; the sf is 1 to double precision there
    if lam < 0.2:
        return 1.0
    total, k = 0.0, 1
    while True:
        term = math.exp(-2.0 * k * k * lam * lam)
        total += term if k % 2 else -term
        if term < 1e-12:
            break
        k += 1
    return min(1.0, max(0.0, 2.0 * total))


def ks_statistic(samples, cdf) -> float:
    """Sup distance between the empirical CDF of ``samples`` and ``cdf``.

    ``cdf`` must accept an array.  Ties are handled: both one-sided gaps are
    taken at every sorted sample.
    """
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    f = np.asarray(cdf(x), dtype=float)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))


def _arcsine_cdf_array(x: np.ndarray) -> np.ndarray:
    return 2.0 / np.pi * np.arcsin(np.sqrt(np.clip(x, 0.0, 1.0)))


def _ks_result(samples: np.ndarray) -> KSResult:
    d = ks_statistic(samples, _arcsine_cdf_array)
    n = samples.size
    return KSResult(statistic=d, p_value=kolmogorov_sf(math.sqrt(n) * d), n=n)


def ks_arcsine(trials: int, steps: int, seed: int, workers: int = 1) -> KSResult:
    """KS test of grid occupation fractions (mu = 0) against the arcsine CDF."""
    if trials < 1000:
        raise ValueError(f"ks_arcsine needs trials >= 1000, got {trials}")
    if steps < 100:
        raise ValueError(f"ks_arcsine needs steps >= 100, got {steps}")
    counts = occupation_counts(0.0, steps, trials, seed, workers)
    return _ks_result(counts / steps)


def ks_arcsine_selftest(trials: int, seed: int) -> KSResult:
    """KS test on exact arcsine draws sin^2(pi U / 2); checks the test itself."""
    rng = np.random.default_rng(_check_seed(seed))
    samples = np.sin(0.5 * np.pi * rng.random(trials)) ** 2
    return _ks_result(samples)


def claim_check(m: int, mu: float, trials: int, seed: int, workers: int = 1) -> ClaimCheckReport:
    """Side-by-side audit of the drift moment formula against all three samplers.

    For m = 1 both quadrature oracles are attached: the exponential-horizon
    positivity probability (which the formula reproduces) and the fixed-horizon
    mean occupation time (which the uniform-time sampler estimates).  Nothing
    is asserted about how the latter compares with the formula.
    """
    if trials < 100_000:
        raise ValueError(f"claim_check needs trials >= 10^5, got {trials}")
    drift_params(mu)
    estimates = {k: estimate_event(k, m, mu, trials, seed, workers) for k in KINDS}
    return ClaimCheckReport(
        m=m,
        mu=float(mu),
        formula_value=moment_drift(m, mu),
        laplace_estimate=estimates["laplace"],
        ballot_estimate=estimates["ballot"],
        uniform_estimate=estimates["uniform"],
        fixed_horizon_oracle=fixed_horizon_mean(mu) if m == 1 else None,
        exp_horizon_oracle=exp_horizon_mean(mu) if m == 1 else None,
    )
