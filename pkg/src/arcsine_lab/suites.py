"""Named verification suites.  Each suite yields one :class:`Check` per line of
``verify`` output; ``passed`` decides the command's exit status.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .analytic import drift_params, exp_horizon_mean
from .exact import (
    BallotInstance,
    arcsine_moment,
    ballot_strict,
    ballot_weak,
    catalan_moment,
    moment_exact,
    tau_pmf,
    telescoping_identity,
)
from .samplers import KINDS, estimate_event
from .stats import Z_BAND, brute_ballot, ks_arcsine, ks_arcsine_selftest, reference_moment

SUITES = ("exact", "ballot", "mc", "ks")

DRIFT_GRID = (-1.0, 0.5, 2.0)
KS_THRESHOLD = 0.02
KS_SELFTEST_FACTOR = 1.95


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    measured: str
    expected: str
    tolerance: str = ""


def fmt(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def exact_suite() -> Iterator[Check]:
    mismatches = [
        m
        for m in range(1, 65)
        if not moment_exact(m, Fraction(1, 2)) == catalan_moment(m) == arcsine_moment(m)
    ]
    yield Check("exact.moment_identity_m1-64", not mismatches, f"{64 - len(mismatches)}/64 equal", "64/64 equal", "exact")
    for m, want in ((1, Fraction(1, 2)), (2, Fraction(3, 8)), (3, Fraction(5, 16))):
        got = moment_exact(m)
        yield Check(f"exact.moment_m{m}", got == want, fmt(got), fmt(want), "exact")

    failed = sum(
        not telescoping_identity(m, w) for m in range(2, 201) for w in range(1, m)
    )
    yield Check("exact.telescoping_m<=200", failed == 0, f"{failed} failures", "0 failures", "exact")

    values = [catalan_moment(m) for m in range(1, 65)]
    ok = values[0] == Fraction(1, 2) and all(0 < b < a for a, b in zip(values, values[1:]))
    yield Check("exact.catalan_decreasing", ok, fmt(float(values[-1])) if ok else "not monotone", "in (0, 1/2], decreasing", "exact")

    worst = min(
        sum(tau_pmf(m, w) for w in range(201)) for m in range(1, 11)
    )
    bound = 1 - Fraction(1, 10**12)
    yield Check("exact.tau_pmf_mass_W200", bound < worst <= 1, f"{float(worst):.15f}", "> 1 - 1e-12", "1e-12")

    bad = sum(
        ballot_weak(BallotInstance(m - 1, w)) != Fraction(m - w, m)
        for m in range(1, 101)
        for w in range(m)
    )
    yield Check("exact.conditional_ballot_m<=100", bad == 0, f"{bad} failures", "0 failures", "exact")

    p = 1 - Fraction(1, 10**6)
    low = min(moment_exact(m, p) for m in range(1, 6))
    yield Check("exact.moment_p_to_1", low > 1 - Fraction(1, 10**4), fmt(float(low)), "> 1 - 1e-4", "1e-4")


def ballot_suite(max_votes: int = 14) -> Iterator[Check]:
    strict_pairs = [(a, b) for a in range(max_votes + 1) for b in range(a) if a + b <= max_votes]
    bad = [
        (a, b)
        for a, b in strict_pairs
        if brute_ballot(BallotInstance(a, b)).probability != ballot_strict(BallotInstance(a, b))
    ]
    yield Check("ballot.strict_vs_enumeration", not bad, f"{len(strict_pairs) - len(bad)}/{len(strict_pairs)} equal", "all equal", "exact")

    weak_pairs = [(a, b) for a in range(max_votes + 1) for b in range(a + 1) if a + b <= max_votes]
    bad = [
        (a, b)
        for a, b in weak_pairs
        if brute_ballot(BallotInstance(a, b), weak=True).probability != ballot_weak(BallotInstance(a, b))
    ]
    yield Check("ballot.weak_vs_enumeration", not bad, f"{len(weak_pairs) - len(bad)}/{len(weak_pairs)} equal", "all equal", "exact")

    edge = [(a, a + 1) for a in range(max_votes) if 2 * a + 1 <= max_votes]
    bad = [(a, b) for a, b in edge if brute_ballot(BallotInstance(a, b), weak=True).favorable != 0]
    yield Check("ballot.weak_boundary_b=a+1", not bad, f"{len(edge) - len(bad)}/{len(edge)} zero", "all zero", "exact")

    bad = [
        (m, w)
        for m in range(1, 8)
        for w in range(m)
        if brute_ballot(BallotInstance(m - 1, w), weak=True).probability != Fraction(m - w, m)
    ]
    yield Check("ballot.conditional_step_m<=7", not bad, f"{len(bad)} failures", "(m-w)/m", "exact")


def _mc_check(name: str, kind: str, m: int, mu: float, trials: int, seed: int, workers: int) -> Check:
    est = estimate_event(kind, m, mu, trials, seed, workers)
    ref = reference_moment(m, mu)
    band = Z_BAND * math.sqrt(ref * (1 - ref) / trials)
    return Check(name, abs(est.estimate - ref) < band, fmt(est.estimate), fmt(ref), fmt(band))


def mc_suite(trials: int = 1_000_000, seed: int = 0, workers: int = 1) -> Iterator[Check]:
    """Seeded Monte Carlo against exact values.

    Bands are 4 sigma with sigma taken from the reference probability q,
    i.e. sqrt(q(1-q)/trials).
    """
    for kind in KINDS:
        for m in range(1, 6):
            yield _mc_check(f"mc.{kind}_m{m}_mu0", kind, m, 0.0, trials, seed, workers)
    for kind in ("laplace", "ballot"):
        for m in (1, 2, 3):
            for mu in DRIFT_GRID:
                yield _mc_check(f"mc.{kind}_m{m}_mu{mu:g}", kind, m, mu, trials, seed, workers)
    grid = np.linspace(-5.0, 5.0, 20)
    worst = max(abs(exp_horizon_mean(mu) - drift_params(mu).p) for mu in grid)
    yield Check("mc.exp_horizon_equals_p_grid20", worst < 1e-8, fmt(worst), "0", "1e-08")


def ks_suite(trials: int = 100_000, steps: int = 10_000, seed: int = 0, workers: int = 1) -> Iterator[Check]:
    res = ks_arcsine(trials, steps, seed, workers)
    yield Check(
        f"ks.grid_n{trials}_steps{steps}",
        res.statistic < KS_THRESHOLD,
        fmt(res.statistic),
        f"< {KS_THRESHOLD}",
        f"p_value={fmt(res.p_value)}",
    )
    for offset in range(3):
        res = ks_arcsine_selftest(trials, (seed + offset) % (1 << 64))
        bound = KS_SELFTEST_FACTOR / math.sqrt(trials)
        yield Check(f"ks.selftest_seed{seed + offset}", res.statistic < bound, fmt(res.statistic), f"< {fmt(bound)}", f"p_value={fmt(res.p_value)}")


def run_suite(
    name: str,
    trials: int = 1_000_000,
    ks_trials: int = 100_000,
    steps: int = 10_000,
    seed: int = 0,
    workers: int = 1,
) -> Iterator[Check]:
    names = SUITES if name == "all" else (name,)
    for suite in names:
        if suite == "exact":
            yield from exact_suite()
        elif suite == "ballot":
            yield from ballot_suite()
        elif suite == "mc":
            yield from mc_suite(trials, seed, workers)
        elif suite == "ks":
            yield from ks_suite(ks_trials, steps, seed, workers)
        else:
            raise ValueError(f"unknown suite {suite!r}")
