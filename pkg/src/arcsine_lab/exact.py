"""Exact combinatorics behind the occupation-time moments.

Everything here works on Python integers and :class:`fractions.Fraction`,
so identities between formulas can be checked by plain ``==``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "BallotInstance",
    "arcsine_moment",
    "ballot_strict",
    "ballot_weak",
    "binomial",
    "catalan_moment",
    "double_factorial",
    "moment_exact",
    "tau_pmf",
    "telescoping_identity",
]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class BallotInstance:
    """Vote counts for candidate A (``a``) and candidate B (``b``)."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError(f"vote counts must be nonnegative, got a={self.a}, b={self.b}")


def _check_m(m: int) -> None:
    if m < 1:
        raise ValueError(f"moment order must be >= 1, got {m}")


def _check_p(p: Fraction) -> Fraction:
    p = Fraction(p)
    if not 0 < p < 1:
        raise ValueError(f"p must lie strictly between 0 and 1, got {p}")
    return p


def binomial(n: int, k: int) -> int:
    """C(n, k) as an exact integer; zero when ``k > n``."""
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be nonnegative")
    return math.comb(n, k)


def ballot_strict(instance: BallotInstance) -> Fraction:
    """Probability that A stays strictly ahead for the whole count."""
    a, b = instance.a, instance.b
    if a <= b:
        raise ValueError(f"strict ballot needs a > b, got a={a}, b={b}")
    return Fraction(a - b, a + b)


def ballot_weak(instance: BallotInstance) -> Fraction:
    """Probability that A is never behind B (ties allowed).

    Defined for ``b <= a + 1``; the boundary ``b = a + 1`` gives 0.
    """
    a, b = instance.a, instance.b
    if b > a + 1:
        raise ValueError(f"weak ballot needs b <= a + 1, got a={a}, b={b}")
    return Fraction(a + 1 - b, a + 1)


def tau_pmf(m: int, w: int, p: Fraction = HALF) -> Fraction:
    """P(the m-th success arrives on draw m + w) for success probability ``p``."""
    _check_m(m)
    if w < 0:
        raise ValueError(f"offset w must be >= 0, got {w}")
    p = _check_p(p)
    return p**m * (1 - p) ** w * binomial(m + w - 1, m - 1)


def moment_exact(m: int, p: Fraction = HALF) -> Fraction:
    """Exact ballot-sum moment  p^m * sum_{w<m} (1-p)^w (m-w)/m C(m+w-1, m-1).

    At ``p = 1/2`` this is the m-th moment of the arcsine law.
    """
    _check_m(m)
    p = _check_p(p)
    q = 1 - p
    total = Fraction(0)
    for w in range(m):
        conditional = ballot_weak(BallotInstance(m - 1, w))
        total += q**w * conditional * binomial(m + w - 1, m - 1)
    return p**m * total


def catalan_moment(m: int) -> Fraction:
    """Closed form 2^{-2m} C(2m, m)."""
    _check_m(m)
    return Fraction(binomial(2 * m, m), 4**m)


def double_factorial(n: int) -> int:
    """n!! by direct product; (-1)!! = 0!! = 1."""
    if n < -1:
        raise ValueError("double factorial undefined below -1")
    return math.prod(range(n, 0, -2))


def arcsine_moment(m: int) -> Fraction:
    """m-th moment of the arcsine law via the beta integral.

    Gamma(m + 1/2) Gamma(1/2) / (pi Gamma(m + 1)) reduces to (2m-1)!! / (2^m m!).
    """
    _check_m(m)
    return Fraction(double_factorial(2 * m - 1), 2**m * math.factorial(m))


def telescoping_identity(m: int, w: int) -> bool:
    """Check (m-w)/m C(m+w-1, m-1) == C(m+w, m) - 2 C(m+w-1, m) exactly."""
    _check_m(m)
    if not 1 <= w <= m - 1:
        raise ValueError(f"need 1 <= w <= m - 1, got m={m}, w={w}")
    lhs = Fraction(m - w, m) * binomial(m + w - 1, m - 1)
    rhs = binomial(m + w, m) - 2 * binomial(m + w - 1, m)
    return lhs == rhs
