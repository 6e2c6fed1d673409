"""Slice volumes of balls along an integer lattice of affine planes.

The central object: for an ambient dimension d split as k lattice directions
plus l = d - k plane directions, the volume of the intersection of the plane
family with a ball of radius rho, centered at torus offset k1, is

    S = omega_l * sum over integer gamma with |gamma - k1| < rho
        of (rho^2 - |gamma - k1|^2)^(l/2)

with STRICT inequality at the boundary (for l = 0 each term is a count of 1,
so strictness is the tie-breaking rule at exact sphere radii).

Enumeration is pruned per coordinate and vectorised over the last one; row
partial sums are combined with Neumaier summation so the result is
bit-reproducible for a fixed enumeration order.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .specfun import compensated_sum, gamma

__all__ = [
    "DEFAULT_BUDGET",
    "EnumerationBudgetError",
    "SliceConfig",
    "TorusOffset",
    "RemainderSample",
    "unit_ball_volume",
    "enumerate_lattice_ball",
    "slice_volume",
    "remainder",
    "remainder_scan",
]

DEFAULT_BUDGET = 10**10


class EnumerationBudgetError(RuntimeError):
    """The pruned enumeration would visit more lattice points than allowed."""


@dataclass(frozen=True)
class SliceConfig:
    """Dimension split (d, k): k lattice coordinates, l = d - k plane ones."""

    d: int
    k: int

    def __post_init__(self):
        if not (isinstance(self.d, int) and isinstance(self.k, int)):
            raise TypeError("SliceConfig dimensions must be integers")
        if not 1 <= self.d <= 16:
            raise ValueError("ambient dimension d must be in [1, 16]")
        if not 0 <= self.k <= self.d:
            raise ValueError("lattice dimension k must be in [0, d]")

    @property
    def l(self) -> int:
        return self.d - self.k


@dataclass(frozen=True)
class TorusOffset:
    """An offset on the k-torus, canonicalised componentwise into [0, 1)."""

    coords: tuple[float, ...]

    def __post_init__(self):
        canon = []
        for c in self.coords:
            x = float(c)
            if not math.isfinite(x):
                raise ValueError("offset coordinates must be finite")
            canon.append(x - math.floor(x))
        object.__setattr__(self, "coords", tuple(canon))

    @classmethod
    def zeros(cls, k: int) -> "TorusOffset":
        return cls((0.0,) * k)

    @property
    def k(self) -> int:
        return len(self.coords)


def _as_offset(offset, k: int) -> TorusOffset:
    if isinstance(offset, TorusOffset):
        off = offset
    elif isinstance(offset, (int, float)):
        off = TorusOffset((float(offset),))
    else:
        off = TorusOffset(tuple(float(c) for c in offset))
    if off.k != k:
        raise ValueError(f"offset has {off.k} coordinates, config needs {k}")
    return off


def unit_ball_volume(d: int) -> float:
    """omega_d = pi^(d/2) / Gamma(d/2 + 1)."""
    if not isinstance(d, int) or d < 0:
        raise ValueError("dimension must be a nonnegative integer")
    return math.pi ** (d / 2.0) / gamma(d / 2.0 + 1.0)


def _check_rho(rho: float) -> float:
    rho = float(rho)
    if not (math.isfinite(rho) and rho > 0.0):
        raise ValueError("rho must be a positive finite real")
    return rho


def _precheck_budget(k: int, rho: float, budget: float) -> None:
    # crude upper estimate of the point count: ball of radius rho + sqrt(k)
    est = unit_ball_volume(k) * (rho + math.sqrt(k)) ** k
    if est > budget:
        raise EnumerationBudgetError(
            f"estimated {est:.3g} lattice points exceeds budget {budget:.3g}"
        )


def enumerate_lattice_ball(k: int, center, rho: float, budget: float = DEFAULT_BUDGET):
    """Yield integer vectors gamma with |gamma - center| < rho (strict).

    Deterministic lexicographic order; coordinate i is pruned to the interval
    of half-width sqrt(rho^2 - accumulated squared distance).
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be a positive integer")
    ctr = [float(c) for c in center] if not isinstance(center, (int, float)) else [float(center)]
    if len(ctr) != k:
        raise ValueError(f"center has {len(ctr)} coordinates, expected {k}")
    rho = _check_rho(rho)
    _precheck_budget(k, rho, budget)

    point = [0] * k
    emitted = 0

    def descend(i: int, rem2: float):
        nonlocal emitted
        c = ctr[i]
        w = math.sqrt(rem2)
        for n in range(math.ceil(c - w), math.floor(c + w) + 1):
            q = rem2 - (n - c) ** 2
            if q <= 0.0:
                continue
            point[i] = n
            if i == k - 1:
                emitted += 1
                if emitted > budget:
                    raise EnumerationBudgetError(
                        f"enumeration exceeded budget of {budget:.3g} points"
                    )
                yield tuple(point)
            else:
                yield from descend(i + 1, q)

    yield from descend(0, rho * rho)


_ROW_CHUNK = 1 << 12


def slice_volume(cfg: SliceConfig, offset, rho: float, budget: float = DEFAULT_BUDGET) -> float:
    """S(rho; offset; d, k) by pruned enumeration.

    k = 0 needs no enumeration (the plane family is all of R^d, giving the
    ball volume). For l = 0 the value is an exact integer count. Rows along
    the last lattice coordinate are summed pairwise in numpy, rows are then
    combined with compensated_sum, so results are reproducible.
    """
    rho = _check_rho(rho)
    d, k, l = cfg.d, cfg.k, cfg.l
    if k == 0:
        return unit_ball_volume(d) * rho**d
    off = _as_offset(offset, k)
    _precheck_budget(k, rho, budget)

    half = 0.5 * l
    r2 = rho * rho
    row_sums: list[float] = []
    npoints = 0

    def last_row(c: float, rem2: float) -> None:
        nonlocal npoints
        w = math.sqrt(rem2)
        n = np.arange(math.ceil(c - w), math.floor(c + w) + 1, dtype=np.float64)
        if n.size == 0:
            return
        q = rem2 - (n - c) ** 2
        q = q[q > 0.0]
        npoints += q.size
        if npoints > budget:
            raise EnumerationBudgetError(f"enumeration exceeded budget of {budget:.3g} points")
        if q.size == 0:
            return
        if l == 0:
            row_sums.append(float(q.size))
        elif q.size > _ROW_CHUNK:
            for i in range(0, q.size, _ROW_CHUNK):
                row_sums.append(float(np.sum(q[i : i + _ROW_CHUNK] ** half)))
        else:
            row_sums.append(float(np.sum(q**half)))

    def descend(i: int, rem2: float) -> None:
        c = off.coords[i]
        if i == k - 1:
            last_row(c, rem2)
            return
        w = math.sqrt(rem2)
        for n in range(math.ceil(c - w), math.floor(c + w) + 1):
            q = rem2 - (n - c) ** 2
            if q > 0.0:
                descend(i + 1, q)

    descend(0, r2)
    total = compensated_sum(row_sums)
    if l == 0:
        return total
    return unit_ball_volume(l) * total


def remainder(cfg: SliceConfig, offset, rho: float, budget: float = DEFAULT_BUDGET) -> float:
    """R = S - omega_d rho^d; identically zero for k = 0."""
    s = slice_volume(cfg, offset, rho, budget)
    return s - unit_ball_volume(cfg.d) * float(rho) ** cfg.d


@dataclass(frozen=True)
class RemainderSample:
    """One (rho, offset) record from a scan, carrying both S and R."""

    cfg: SliceConfig
    rho: float
    offset: TorusOffset
    volume: float
    remainder: float

    def __post_init__(self):
        ball = unit_ball_volume(self.cfg.d) * self.rho**self.cfg.d
        scale = max(abs(self.volume), ball, 1.0)
        if abs(self.remainder - (self.volume - ball)) > 64.0 * 2.22e-16 * scale:
            raise ValueError("inconsistent RemainderSample: remainder != volume - ball")


def _scan_task(args) -> tuple[float, float]:
    cfg, coords, rho, budget = args
    s = slice_volume(cfg, TorusOffset(coords), rho, budget)
    return s, s - unit_ball_volume(cfg.d) * rho**cfg.d


def remainder_scan(
    cfg: SliceConfig,
    offsets,
    rho_grid,
    budget: float = DEFAULT_BUDGET,
    threads: int = 1,
) -> list[RemainderSample]:
    """RemainderSamples for every (rho, offset) pair, rho-major order.

    With threads > 1 the pairs are farmed out to worker processes; each pair
    is computed independently with the serial code path and results are
    collected in task order, so output is identical for any thread count.
    """
    offs = [_as_offset(o, cfg.k) for o in offsets]
    grid = [_check_rho(r) for r in rho_grid]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("rho_grid must be strictly increasing")
    tasks = [(cfg, o.coords, r, budget) for r in grid for o in offs]
    if threads <= 1 or len(tasks) < 2:
        results = [_scan_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunk = max(1, len(tasks) // (8 * threads))
            results = list(pool.map(_scan_task, tasks, chunksize=chunk))
    out = []
    for (cfg_, coords, r, _), (s, rem) in zip(tasks, results):
        out.append(RemainderSample(cfg_, r, TorusOffset(coords), s, rem))
    return out
