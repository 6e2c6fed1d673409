"""Remainder growth exponents, power-law fitting, and torus Fourier coefficients.

The remainder R(rho) = S(rho) - omega_d rho^d grows at most like a power of rho
whose exponent depends on (d, k) through a three-case classification, and at
least like rho^((d-1)/2) for suitable offsets.  This module predicts those
exponents, fits measured remainder magnitudes against them, and evaluates the
torus-averaged Fourier coefficients of R that tie the remainder back to the
ball transform.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .lattice import (
    DEFAULT_BUDGET,
    SliceConfig,
    TorusOffset,
    remainder,
    remainder_scan,
)

__all__ = [
    "ExponentPrediction",
    "PowerLawFit",
    "TorusQuadrature",
    "upper_exponent",
    "lower_exponent",
    "fit_power_law",
    "constrained_power_law_fit",
    "offset_panel",
    "dyadic_rho_grid",
    "geometric_rho_grid",
    "panel_sup_remainders",
    "remainder_fourier_coeff",
]


@dataclass(frozen=True)
class ExponentPrediction:
    """A predicted growth exponent for |R|, upper or lower bound flavour."""

    exponent: float
    log_factor: bool = False
    kind: str = "upper"
    epsilon_slack: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("upper", "lower"):
            raise ValueError("kind must be 'upper' or 'lower'")
        if self.log_factor and self.kind != "upper":
            raise ValueError("log factors only arise in upper bounds")
        if self.epsilon_slack < 0.0:
            raise ValueError("epsilon_slack must be nonnegative")
        if self.epsilon_slack > 0.0 and self.kind != "lower":
            raise ValueError("epsilon_slack only applies to lower bounds")


def upper_exponent(d: int, k: int) -> ExponentPrediction:
    """Uniform-in-offset upper exponent for |R(rho; offset; d, k)|.

    Three regimes split at k = (d+1)/2: below it the exponent is (d-1)/2,
    exactly at it the same exponent picks up a log factor, above it the
    lattice directions dominate and the exponent rises to d - 2k/(2k+1-d).
    For k = 0 the remainder vanishes identically and no prediction applies.
    """
    cfg = SliceConfig(d, k)  # range validation
    if k == 0:
        raise ValueError("k = 0 has remainder identically zero; no exponent prediction")
    if 2 * k < d + 1:
        pred = ExponentPrediction((d - 1) / 2.0)
    elif 2 * k == d + 1:
        pred = ExponentPrediction((d - 1) / 2.0, log_factor=True)
    else:
        pred = ExponentPrediction(d - 2.0 * k / (2 * k + 1 - d))
    if not 0.0 <= pred.exponent <= cfg.d:
        raise AssertionError(f"exponent {pred.exponent} outside [0, {d}]")
    return pred


def lower_exponent(d: int, k: int, eps_slack: float = 0.0) -> ExponentPrediction | None:
    """Existence-flavoured lower exponent, or None where no bound is known.

    For d = 1 mod 4 the lower bound loses an arbitrarily small amount off
    (d-1)/2 and needs k > 1; with k = 1 in those dimensions nothing is proved
    and the function returns None rather than guessing.
    """
    SliceConfig(d, k)
    if k < 1:
        raise ValueError("lower exponent needs k >= 1")
    if eps_slack < 0.0:
        raise ValueError("eps_slack must be nonnegative")
    if d % 4 == 1:
        if k == 1:
            return None
        if not eps_slack > 0.0:
            raise ValueError("d = 1 mod 4 lower bound needs a positive eps_slack")
        return ExponentPrediction((d - 1 - eps_slack) / 2.0, kind="lower",
                                  epsilon_slack=eps_slack)
    return ExponentPrediction((d - 1) / 2.0, kind="lower")


@dataclass(frozen=True)
class PowerLawFit:
    slope: float
    intercept: float
    r_squared: float
    n_points: int

    def __post_init__(self) -> None:
        if self.n_points < 3:
            raise ValueError("power-law fits need at least 3 points")
        if not 0.0 <= self.r_squared <= 1.0:
            raise ValueError("r_squared must lie in [0, 1]")

    @property
    def amplitude(self) -> float:
        """The constant c in the fitted law c * rho^slope."""
        return math.exp(self.intercept)


def _fit_arrays(samples: Iterable[tuple[float, float]]):
    pts = [(float(r), float(m)) for r, m in samples]
    if len(pts) < 3:
        raise ValueError("need at least 3 samples")
    rhos = [r for r, _ in pts]
    if len(set(rhos)) != len(rhos):
        raise ValueError("rho values must be distinct")
    if any(not m > 0.0 for _, m in pts):
        raise ValueError("all magnitudes must be positive")
    x = np.log([r for r, _ in pts])
    y = np.log([m for _, m in pts])
    return x, y


def _r_squared(y: np.ndarray, fitted: np.ndarray) -> float:
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        return 1.0 if ss_res <= 1e-24 else 0.0
    return min(1.0, max(0.0, 1.0 - ss_res / ss_tot))


def fit_power_law(samples: Iterable[tuple[float, float]]) -> PowerLawFit:
    """Ordinary least squares of log magnitude against log rho."""
    x, y = _fit_arrays(samples)
    slope, intercept = np.polyfit(x, y, 1)
    return PowerLawFit(float(slope), float(intercept),
                       _r_squared(y, slope * x + intercept), len(x))


def constrained_power_law_fit(samples: Iterable[tuple[float, float]],
                              exponent: float) -> PowerLawFit:
    """Best fit c * rho^exponent with the exponent held fixed.

    Only the log-amplitude is estimated.  The reported r_squared measures how
    much of the variance the imposed slope explains and is floored at 0 when
    the constrained line does worse than a constant.
    """
    x, y = _fit_arrays(samples)
    intercept = float(np.mean(y - exponent * x))
    return PowerLawFit(float(exponent), intercept,
                       _r_squared(y, exponent * x + intercept), len(x))


def offset_panel(k: int, count: int = 32, seed: int = 0) -> tuple[TorusOffset, ...]:
    """Fixed pseudo-random torus offsets standing in for a sup over all offsets."""
    if k < 1 or count < 1:
        raise ValueError("offset panels need k >= 1 and count >= 1")
    rng = np.random.default_rng(seed)
    grid = rng.random((count, k))
    return tuple(TorusOffset(tuple(float(c) for c in row)) for row in grid)


def dyadic_rho_grid(min_octave: int, max_octave: int,
                    per_octave: int = 8) -> tuple[float, ...]:
    """Geometric rho grid from 2^min_octave to 2^max_octave inclusive."""
    if max_octave <= min_octave:
        raise ValueError("max_octave must exceed min_octave")
    if per_octave < 1:
        raise ValueError("per_octave must be positive")
    steps = (max_octave - min_octave) * per_octave
    return tuple(2.0 ** (min_octave + j / per_octave) for j in range(steps + 1))


def geometric_rho_grid(rho_min: float, rho_max: float,
                       per_octave: int = 8) -> tuple[float, ...]:
    """Geometric ladder rho_min * 2^(j/per_octave) capped at rho_max."""
    if not 0.0 < rho_min < rho_max:
        raise ValueError("need 0 < rho_min < rho_max")
    if per_octave < 1:
        raise ValueError("per_octave must be positive")
    steps = int(math.floor(per_octave * math.log2(rho_max / rho_min) + 1e-9))
    return tuple(rho_min * 2.0 ** (j / per_octave) for j in range(steps + 1))


def panel_sup_remainders(
    cfg: SliceConfig,
    offsets: Sequence[TorusOffset],
    rho_grid: Sequence[float],
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> tuple[tuple[float, float], ...]:
    """Max over the offset panel of |R| at each rho, as (rho, sup) pairs."""
    samples = remainder_scan(cfg, offsets, rho_grid, budget=budget, threads=threads)
    per_rho: dict[float, float] = {}
    for s in samples:
        cur = per_rho.get(s.rho)
        mag = abs(s.remainder)
        if cur is None or mag > cur:
            per_rho[s.rho] = mag
    return tuple((rho, per_rho[rho]) for rho in rho_grid)


@dataclass(frozen=True)
class TorusQuadrature:
    """Quadrature recipe for torus averages: midpoint grid or Monte Carlo."""

    points_per_dim: int = 64
    mc_samples: int = 100_000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.points_per_dim < 1 or self.mc_samples < 1:
            raise ValueError("quadrature sizes must be positive")


def _coerce_gamma(gamma, k: int) -> tuple[int, ...]:
    if isinstance(gamma, (int, np.integer)):
        coords = (int(gamma),)
    else:
        coords = tuple(int(g) for g in gamma)
        if any(float(g) != int(g) for g in gamma):
            raise ValueError("gamma must have integer coordinates")
    if len(coords) != k:
        raise ValueError(f"gamma has {len(coords)} coordinates, config needs {k}")
    return coords


def remainder_fourier_coeff(
    cfg: SliceConfig,
    rho: float,
    gamma,
    quad: TorusQuadrature | None = None,
    budget: int = DEFAULT_BUDGET,
) -> complex:
    """Torus average of R(rho; offset) against exp(-2 pi i offset . gamma).

    Tensor-product midpoint rule for k <= 2, seeded Monte Carlo for k >= 3.
    The enumeration budget is split evenly across quadrature nodes so the
    whole average stays within `budget` lattice points.
    """
    rho = float(rho)
    if not rho > 0.0:
        raise ValueError("rho must be positive")
    quad = quad or TorusQuadrature()
    g = _coerce_gamma(gamma, cfg.k)

    if cfg.k <= 2:
        n = quad.points_per_dim
        ticks = (np.arange(n) + 0.5) / n
        if cfg.k == 1:
            nodes = ticks[:, None]
        else:
            a, b = np.meshgrid(ticks, ticks, indexing="ij")
            nodes = np.column_stack([a.ravel(), b.ravel()])
    else:
        rng = np.random.default_rng(quad.seed)
        nodes = rng.random((quad.mc_samples, cfg.k))

    per_node_budget = max(1, budget // len(nodes))
    acc = 0.0 + 0.0j
    for row in nodes:
        off = TorusOffset(tuple(float(c) for c in row))
        phase = -2.0 * math.pi * sum(c * gi for c, gi in zip(row, g))
        acc += remainder(cfg, off, rho, budget=per_node_budget) * cmath.exp(1j * phase)
    return acc / len(nodes)
