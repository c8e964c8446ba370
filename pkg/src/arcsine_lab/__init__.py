"""Exact and Monte Carlo verification of the arcsine law for Brownian occupation time."""

from .analytic import (
    DriftParameters,
    arcsine_cdf,
    arcsine_pdf,
    drift_params,
    exp_horizon_mean,
    fixed_horizon_mean,
    moment_drift,
    normal_cdf,
)
from .exact import (
    BallotInstance,
    arcsine_moment,
    ballot_strict,
    ballot_weak,
    binomial,
    catalan_moment,
    moment_exact,
    tau_pmf,
    telescoping_identity,
)
from .samplers import (
    EstimateWithCI,
    OccupationSample,
    TrialOutcome,
    brownian_at_sorted_times,
    estimate_event,
    occupation_counts,
    occupation_grid,
    persist_ballot,
    persist_laplace_walk,
    persist_uniform,
    simulate_events,
)
from .stats import (
    ClaimCheckReport,
    EnumerationResult,
    KSResult,
    brute_ballot,
    claim_check,
    ks_arcsine,
    ztest_moment,
)

__version__ = "0.1.0"
