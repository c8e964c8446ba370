"""Floating-point analytics: arcsine law, drift parameters and quadrature oracles."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate

from .exact import binomial

__all__ = [
    "DriftParameters",
    "arcsine_cdf",
    "arcsine_pdf",
    "drift_params",
    "exp_horizon_mean",
    "fixed_horizon_mean",
    "moment_drift",
    "normal_cdf",
]

# e^{-60} ~ 8.8e-27 bounds the discarded tail of the exponential-horizon integral.
EXP_HORIZON_CUTOFF = 60.0


@dataclass(frozen=True)
class DriftParameters:
    """Drift ``mu`` together with the derived Laplace scale ``kappa`` and colour
    probability ``p``.  Build these with :func:`drift_params`.
    """

    mu: float
    kappa: float
    p: float


def _check_finite(mu: float) -> float:
    mu = float(mu)
    if not math.isfinite(mu):
        raise ValueError(f"drift must be finite, got {mu}")
    return mu


def drift_params(mu: float) -> DriftParameters:
    mu = _check_finite(mu)
    root = math.sqrt(2.0 + mu * mu)
    # (root - mu) cancels badly for large positive mu; use the conjugate form there.
    if mu > 0:
        kappa = math.sqrt(2.0) / (root + mu)
    else:
        kappa = (root - mu) / math.sqrt(2.0)
    p = 1.0 / (1.0 + kappa * kappa)
    return DriftParameters(mu=mu, kappa=kappa, p=p)


def moment_drift(m: int, mu: float) -> float:
    """Ballot-sum moment evaluated at the drift colour probability ``p(mu)``.

    Coefficients are exact integers, converted to float once per term, and the
    terms are added with compensated summation.
    """
    if m < 1:
        raise ValueError(f"moment order must be >= 1, got {m}")
    p = drift_params(mu).p
    q = 1.0 - p
    terms = []
    for w in range(m):
        # (m - w)/m * C(m+w-1, m-1) is always an integer
        coef = (m - w) * binomial(m + w - 1, m - 1) // m
        try:
            terms.append(float(coef) * p**m * q**w)
        except OverflowError:
            terms.append(math.exp(math.log(coef) + m * math.log(p) + w * math.log(q)))
    return math.fsum(terms)


def arcsine_pdf(x: float) -> float:
    if not 0.0 < x < 1.0:
        raise ValueError(f"arcsine density is defined on the open interval (0, 1), got {x}")
    return 1.0 / (math.pi * math.sqrt(x * (1.0 - x)))


def arcsine_cdf(x: float) -> float:
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    return 2.0 / math.pi * math.asin(math.sqrt(x))


def normal_cdf(x: float) -> float:
    """Standard normal CDF via the complementary error function."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def exp_horizon_mean(mu: float) -> float:
    """P(B_T + mu*T > 0) for an independent unit-rate exponential time T.

    Computed as the integral of e^{-t} Phi(mu sqrt(t)) over [0, 60] after the
    substitution t = s^2, which removes the square-root kink at the origin.
    """
    mu = _check_finite(mu)
    upper = math.sqrt(EXP_HORIZON_CUTOFF)
    value, _ = integrate.quad(
        lambda s: 2.0 * s * math.exp(-s * s) * normal_cdf(mu * s),
        0.0,
        upper,
        epsabs=1e-13,
        epsrel=1e-13,
        limit=200,
    )
    return value


def fixed_horizon_mean(mu: float) -> float:
    """Expected fraction of [0, 1] spent above zero: integral of Phi(mu sqrt(t))."""
    mu = _check_finite(mu)
    value, _ = integrate.quad(
        lambda s: 2.0 * s * normal_cdf(mu * s),
        0.0,
        1.0,
        epsabs=1e-13,
        epsrel=1e-13,
        limit=200,
    )
    return value


def arcsine_cdf_quad(x: float) -> float:
    """Integrate :func:`arcsine_pdf` from 0 to ``x`` numerically.

    The endpoint singularities are handled by x = sin^2(theta), under which the
    integrand becomes the constant 2/pi; the quadrature runs on the raw density
    away from the endpoints and on the transformed integrand near them.
    """
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    split = min(x, 0.25)
    theta = math.asin(math.sqrt(split))
    head, _ = integrate.quad(
        lambda t: arcsine_pdf(math.sin(t) ** 2) * 2.0 * math.sin(t) * math.cos(t),
        0.0,
        theta,
        epsabs=1e-14,
        epsrel=1e-14,
    )
    if x <= split:
        return head
    upper = min(x, 0.75)
    body, _ = integrate.quad(arcsine_pdf, split, upper, epsabs=1e-14, epsrel=1e-14)
    if x <= upper:
        return head + body
    t0, t1 = math.asin(math.sqrt(upper)), math.asin(math.sqrt(x))
    tail, _ = integrate.quad(
        lambda t: arcsine_pdf(math.sin(t) ** 2) * 2.0 * math.sin(t) * math.cos(t),
        t0,
        t1,
        epsabs=1e-14,
        epsrel=1e-14,
    )
    return head + body + tail
