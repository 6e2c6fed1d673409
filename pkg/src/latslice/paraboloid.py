"""Paraboloid slice measures, Euler-Maclaurin expansions, and the Landau IDS.

The solid paraboloid {x : 0 <= x_0 <= rho - |x'|^2} sliced by the same lattice
of planes as the ball problem has measure expressible as a sum of ball slice
volumes at radii sqrt(rho - j).  Euler-Maclaurin turns that sum into a
polynomial in sqrt(rho) plus a small remainder, and a rescaled special case
gives the integrated density of states of the Landau Hamiltonian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .lattice import DEFAULT_BUDGET, SliceConfig, TorusOffset, slice_volume, unit_ball_volume
from .specfun import bernoulli, gamma, recip_gamma

__all__ = [
    "ParaboloidQuery",
    "ExpansionSpec",
    "LandauQuery",
    "ParaboloidErrorProfile",
    "paraboloid_measure",
    "expansion_spec",
    "euler_maclaurin_E",
    "euler_maclaurin_exact",
    "faulhaber_sum",
    "paraboloid_error_exponents",
    "paraboloid_asymptotic",
    "landau_ids_direct",
    "landau_ids_via_paraboloid",
    "landau_leading_h3",
]


@dataclass(frozen=True)
class ParaboloidQuery:
    """Parameters for the paraboloid measure P(rho; d, k)."""

    d: int
    k: int
    rho: float

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError("paraboloid queries need d >= 2")
        if not 1 <= self.k <= self.d:
            raise ValueError("k must lie in [1, d]")
        if not self.rho >= 0.0:
            raise ValueError("rho must be nonnegative")


@dataclass(frozen=True)
class LandauQuery:
    d: int
    lam: float

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError("Landau queries need d >= 2")


def paraboloid_measure(q: ParaboloidQuery, budget: int = DEFAULT_BUDGET) -> float:
    """P(rho; d, k): sum over integer heights j of ball slices at sqrt(rho - j).

    The k = 1 case needs no lattice enumeration (the inner slice is a full
    ball) and is evaluated vectorized, which keeps rho up to 1e6 cheap.
    """
    a = math.floor(q.rho)
    if q.k == 1:
        radii2 = q.rho - np.arange(a + 1, dtype=float)
        return unit_ball_volume(q.d - 1) * float(
            math.fsum(radii2 ** (0.5 * (q.d - 1)))
        )
    cfg = SliceConfig(q.d - 1, q.k - 1)
    origin = TorusOffset.zeros(q.k - 1)
    terms = []
    for j in range(a + 1):
        r2 = q.rho - j
        if r2 <= 0.0:
            continue  # empty slice, and slice_volume insists on rho > 0
        terms.append(slice_volume(cfg, origin, math.sqrt(r2), budget=budget))
    return math.fsum(terms)


@dataclass(frozen=True)
class ExpansionSpec:
    """Term-by-term description of the expansion E_n(rho, d)."""

    d: int
    n_terms: int
    coefficients: tuple[tuple[float, float], ...]  # (power of rho, coefficient)

    def __post_init__(self) -> None:
        if self.n_terms < 0:
            raise ValueError("n_terms must be nonnegative")
        powers = [p for p, _ in self.coefficients]
        if any(b >= a for a, b in zip(powers, powers[1:])):
            raise ValueError("powers must be strictly decreasing")
        if len(self.coefficients) < 2:
            raise ValueError("expansion starts with two fixed leading terms")
        (p0, c0), (p1, c1) = self.coefficients[:2]
        if (p0, p1) != ((self.d + 1) / 2.0, (self.d - 1) / 2.0):
            raise ValueError("leading powers must be (d+1)/2 and (d-1)/2")
        if abs(c0 - 2.0 / (self.d + 1)) > 1e-15 or abs(c1 - 0.5) > 1e-15:
            raise ValueError("leading coefficients must be 2/(d+1) and 1/2")

    def evaluate(self, rho: float) -> float:
        if not rho > 0.0:
            raise ValueError("rho must be positive")
        return math.fsum(c * rho**p for p, c in self.coefficients)


def _bernoulli_term_fraction(d: int, k: int) -> Fraction:
    """Exact rational B_{2k}/(2k)! * Gamma((d+1)/2)/Gamma((d+3-4k)/2) for odd d."""
    num = (d + 1) // 2  # Gamma argument, integer since d is odd
    den = (d + 3 - 4 * k) // 2
    if den <= 0:
        return Fraction(0)  # reciprocal gamma pole
    ratio = Fraction(math.factorial(num - 1), math.factorial(den - 1))
    return bernoulli(2 * k) / math.factorial(2 * k) * ratio


def expansion_spec(d: int, n: int) -> ExpansionSpec:
    """Build E_n(rho, d) as explicit (power, coefficient) pairs."""
    if d < 1:
        raise ValueError("d must be positive")
    if n < 0:
        raise ValueError("n must be nonnegative")
    coeffs: list[tuple[float, float]] = [
        ((d + 1) / 2.0, 2.0 / (d + 1)),
        ((d - 1) / 2.0, 0.5),
    ]
    for k in range(1, n + 1):
        power = (d + 1 - 4 * k) / 2.0
        if d % 2 == 1:
            coeff = float(_bernoulli_term_fraction(d, k))
        else:
            coeff = (
                float(bernoulli(2 * k))
                / math.factorial(2 * k)
                * gamma((d + 1) / 2.0)
                * recip_gamma((d + 3 - 4 * k) / 2.0)
            )
        coeffs.append((power, coeff))
    return ExpansionSpec(d, n, tuple(coeffs))


def euler_maclaurin_E(d: int, n: int, rho: float) -> float:
    """E_n(rho, d) evaluated in floating point."""
    return expansion_spec(d, n).evaluate(float(rho))


def euler_maclaurin_exact(d: int, n: int, a: int) -> Fraction:
    """E_n(a, d) as an exact rational; requires odd d and integer a.

    All powers (d+1-4k)/2 are then integers and every coefficient is rational,
    so the expansion can be compared against integer power sums with no
    rounding at all.
    """
    if d % 2 != 1:
        raise ValueError("exact evaluation needs odd d")
    if a < 0:
        raise ValueError("a must be a nonnegative integer")
    half = (d + 1) // 2
    total = Fraction(2, d + 1) * Fraction(a) ** half
    total += Fraction(1, 2) * Fraction(a) ** (half - 1)
    for k in range(1, n + 1):
        power = half - 2 * k
        if power < 0:
            raise ValueError("negative powers are not exactly evaluable at integers")
        total += _bernoulli_term_fraction(d, k) * Fraction(a) ** power
    return total


def faulhaber_sum(m: int, a: int) -> int:
    """Sum of j^m for j = 0..a, by direct integer summation (oracle helper)."""
    if m < 0 or a < 0:
        raise ValueError("m and a must be nonnegative")
    return sum(j**m for j in range(a + 1))


@dataclass(frozen=True)
class ParaboloidErrorProfile:
    """Expansion order and error exponents for P(rho; d, k) asymptotics.

    `stated_exponent` is the error power as displayed; `alt_exponent` records
    a second power implied by the underlying single-slice error budget where
    the two disagree, without taking sides.  `log_factor` marks the boundary
    case that picks up a logarithm.
    """

    order: int
    stated_exponent: float
    alt_exponent: float | None
    log_factor: bool


def paraboloid_error_exponents(d: int, k: int) -> ParaboloidErrorProfile:
    if d < 2 or not 1 <= k <= d:
        raise ValueError("need d >= 2 and 1 <= k <= d")
    if k == 1:
        return ParaboloidErrorProfile(order=(d + 1) // 4, stated_exponent=0.0,
                                      alt_exponent=None, log_factor=False)
    if k == d:
        return ParaboloidErrorProfile(order=0,
                                      stated_exponent=(d * d - d + 2) / (2.0 * d),
                                      alt_exponent=None, log_factor=False)
    if 2 * k > d + 2:
        stated = 0.5 * (d - 1 - (2.0 * k - 2.0) / (2 * k - d))
        return ParaboloidErrorProfile(order=(k - 1) // (4 * k - 2),
                                      stated_exponent=stated,
                                      alt_exponent=stated + 1.0, log_factor=False)
    return ParaboloidErrorProfile(order=max(0, (d - 4) // 8),
                                  stated_exponent=(d + 4) / 4.0,
                                  alt_exponent=(d + 2) / 4.0,
                                  log_factor=(2 * k == d + 2))


def paraboloid_asymptotic(d: int, k: int, rho: float) -> tuple[float, float]:
    """Expansion value omega_{d-1} E_m(rho) and the error yardstick it carries.

    The yardstick is rho to the stated error exponent (times log rho in the
    flagged boundary case); it calibrates comparisons and is not a certified
    bound.
    """
    rho = float(rho)
    if not rho > 0.0:
        raise ValueError("rho must be positive")
    profile = paraboloid_error_exponents(d, k)
    value = unit_ball_volume(d - 1) * euler_maclaurin_E(d, profile.order, rho)
    yardstick = rho**profile.stated_exponent
    if profile.log_factor and rho > 1.0:
        yardstick *= math.log(rho)
    return value, yardstick


# ---------------------------------------------------------------------------
# Landau Hamiltonian integrated density of states
# ---------------------------------------------------------------------------


def landau_ids_direct(q: LandauQuery) -> float:
    """IDS of the Landau Hamiltonian from its harmonic-oscillator levels.

    Levels sit at 2n + 1 shifted by the transverse kinetic energy; the strict
    counting convention (levels < lambda) matches the strict ball inequality
    used everywhere else, so at spectral edges the new level is not counted.
    """
    lam = float(q.lam)
    if lam <= 1.0:
        return 0.0
    if q.d == 2:
        return max(0, math.ceil((lam - 1.0) / 2.0)) / (2.0 * math.pi)
    n_levels = math.ceil((lam - 1.0) / 2.0)  # n with 2n + 1 < lam
    n = np.arange(n_levels, dtype=float)
    gaps = lam - 2.0 * n - 1.0
    body = math.fsum(gaps ** (0.5 * (q.d - 2)))
    return unit_ball_volume(q.d - 2) / (2.0 * math.pi) ** (q.d - 1) * body


def landau_ids_via_paraboloid(q: LandauQuery, budget: int = DEFAULT_BUDGET) -> float:
    """IDS via the paraboloid measure: 2^{-d/2} pi^{1-d} P((lam-1)/2; d-1, 1)."""
    if q.d < 3:
        raise ValueError("the paraboloid route needs d >= 3")
    lam = float(q.lam)
    if lam <= 1.0:
        return 0.0
    p = paraboloid_measure(ParaboloidQuery(q.d - 1, 1, (lam - 1.0) / 2.0), budget=budget)
    return 2.0 ** (-0.5 * q.d) * math.pi ** (1 - q.d) * p


def landau_leading_h3(lam: float) -> float:
    """Leading asymptotic term lambda^{3/2} / (6 pi^2) of the d = 3 IDS."""
    lam = float(lam)
    if not lam >= 1.0:
        raise ValueError("the leading-term comparison starts at lambda = 1")
    return lam**1.5 / (6.0 * math.pi**2)
