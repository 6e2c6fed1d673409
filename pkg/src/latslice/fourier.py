"""Ball cutoff, its Fourier transform, mollification, and Poisson approximants.

The cutoff chi(x) = (1 - |x|^2)^(l/2) on the unit ball of R^k is what the
slice volume sums over the lattice; its k-dimensional Fourier transform has
the radial closed form

    chi_hat(t) = Gamma(l/2 + 1) * pi^(-l/2) * t^(-d/2) * J_{d/2}(2 pi t)

(validated against direct quadrature of the defining integral before this
closed form was trusted; see the test suite). Mollifying chi with a smooth
bump and rescaling gives squeezing profiles chi_eps^- <= chi <= chi_eps^+
whose truncated Poisson sums bracket the exact slice volume with a
certified tail bound.

The mollifier transform has no closed form, so its values come from a cached
quadrature-built spline and its tail certificates from an empirically fitted
decay envelope (band sups with a safety factor), also cached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicSpline
from scipy.special import j0 as _scipy_j0

from .lattice import SliceConfig, _as_offset, unit_ball_volume
from .specfun import HalfInteger, bessel_j, compensated_sum, gamma

__all__ = [
    "CutoffProfile",
    "PoissonTruncation",
    "PoissonApprox",
    "QuadratureError",
    "TailToleranceError",
    "chi",
    "chi_hat",
    "chi_hat_asymptotic",
    "chi_hat_derivative",
    "mollifier_psi",
    "mollifier_Psi",
    "chi_eps",
    "chi_eps_pm",
    "poisson_sum_approx",
    "default_epsilon",
]

_TWO_PI = 2.0 * math.pi
_SIGNS = ("plus", "minus", "none")


class QuadratureError(RuntimeError):
    """A quadrature failed to reach its accuracy target."""


class TailToleranceError(RuntimeError):
    """The certified Poisson tail exceeds the caller's allowance."""


@dataclass(frozen=True)
class CutoffProfile:
    """A (possibly mollified, possibly rescaled) cutoff: chi, chi_eps, chi_eps^±."""

    cfg: SliceConfig
    epsilon: float = 0.0
    sign: str = "none"

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 0.49:
            raise ValueError("epsilon must lie in [0, 0.49]")
        if self.sign not in _SIGNS:
            raise ValueError(f"sign must be one of {_SIGNS}")
        if self.sign != "none" and self.epsilon <= 0.0:
            raise ValueError("signed profiles require epsilon > 0")


@dataclass(frozen=True)
class PoissonTruncation:
    """Frequency cutoff |m| < max_freq_norm plus a tail bound.

    As an input to poisson_sum_approx, tail_bound is the allowance the caller
    will accept (default: unlimited); in the returned approximant it is the
    certified bound on what the truncation discarded.
    """

    max_freq_norm: float
    tail_bound: float = math.inf

    def __post_init__(self):
        if not self.max_freq_norm >= 1.0:
            raise ValueError("max_freq_norm must be >= 1")
        if not self.tail_bound >= 0.0:
            raise ValueError("tail_bound must be nonnegative")


@dataclass(frozen=True)
class PoissonApprox:
    """Truncated dual-lattice sum with its certificate."""

    value: float
    tail_bound: float
    truncation: PoissonTruncation
    terms: int
    zero_term: float

    def __float__(self) -> float:
        return self.value


# ---------------------------------------------------------------------------
# the cutoff and its transform
# ---------------------------------------------------------------------------


def chi(cfg: SliceConfig, x) -> float:
    """(1 - |x|^2)^(l/2) inside the unit ball of R^k, 0 outside (strict)."""
    coords = (float(x),) if isinstance(x, (int, float)) else tuple(float(c) for c in x)
    if len(coords) != cfg.k:
        raise ValueError(f"x has {len(coords)} coordinates, config needs {cfg.k}")
    n2 = math.fsum(c * c for c in coords)
    if n2 >= 1.0:
        return 0.0
    if cfg.l == 0:
        return 1.0
    return (1.0 - n2) ** (0.5 * cfg.l)


def _c_dk(cfg: SliceConfig) -> float:
    return gamma(cfg.l / 2.0 + 1.0) * math.pi ** (-cfg.l / 2.0)


def chi_hat(cfg: SliceConfig, xi_norm: float) -> float:
    """Radial Fourier transform of chi at |xi| = xi_norm.

    Ascending series below t = 0.1 (removing the 0/0 at the origin), Bessel
    closed form above. chi_hat(0) * omega_l = omega_d.
    """
    t = float(xi_norm)
    if not (math.isfinite(t) and t >= 0.0):
        raise ValueError("xi_norm must be a nonnegative real")
    d = cfg.d
    if t < 0.1:
        # chi_hat = Gamma(l/2+1) pi^{k/2} sum_m (-1)^m (pi t)^{2m} / (m! Gamma(d/2+m+1))
        pref = gamma(cfg.l / 2.0 + 1.0) * math.pi ** (cfg.k / 2.0)
        q = -((math.pi * t) ** 2)
        term = 1.0 / gamma(d / 2.0 + 1.0)
        acc = term
        for m in range(1, 40):
            term *= q / (m * (d / 2.0 + m))
            acc += term
            if abs(term) <= 1e-18 * abs(acc):
                break
        return pref * acc
    return _c_dk(cfg) * t ** (-d / 2.0) * bessel_j(HalfInteger(d), _TWO_PI * t)


def chi_hat_asymptotic(cfg: SliceConfig, xi_norm: float) -> float:
    """Leading oscillatory term C * t^{-(d+1)/2} * cos(2 pi t - (d+1) pi/4)."""
    t = float(xi_norm)
    if not t >= 1.0:
        raise ValueError("asymptotic form requires xi_norm >= 1")
    d = cfg.d
    amp = gamma(cfg.l / 2.0 + 1.0) * math.pi ** (-cfg.l / 2.0 - 1.0)
    return amp * t ** (-(d + 1) / 2.0) * math.cos(_TWO_PI * t - (d + 1) * math.pi / 4.0)


def chi_hat_derivative(cfg: SliceConfig, xi_norm: float) -> float:
    """d/dt of chi_hat via the Bessel derivative identity 2 J' = J_{nu-1} - J_{nu+1}."""
    t = float(xi_norm)
    if not t > 0.0:
        raise ValueError("derivative needs xi_norm > 0")
    d = cfg.d
    z = _TWO_PI * t
    nu = HalfInteger(d)
    if d >= 2:
        jprime = 0.5 * (bessel_j(HalfInteger(d - 2), z) - bessel_j(HalfInteger(d + 2), z))
    else:
        # J_nu' = (nu/z) J_nu - J_{nu+1} keeps both orders nonnegative for d = 1
        jprime = (d / 2.0 / z) * bessel_j(nu, z) - bessel_j(HalfInteger(d + 2), z)
    j = bessel_j(nu, z)
    return _c_dk(cfg) * (t ** (-d / 2.0) * _TWO_PI * jprime - (d / 2.0) * t ** (-d / 2.0 - 1.0) * j)


# ---------------------------------------------------------------------------
# mollifier and its transform
# ---------------------------------------------------------------------------


def _bump(r: float) -> float:
    if abs(r) >= 1.0:
        return 0.0
    return math.exp(-1.0 / (1.0 - r * r))


def _sphere_area(m: int) -> float:
    # area of the unit sphere S^m in R^{m+1}
    return 2.0 * math.pi ** ((m + 1) / 2.0) / gamma((m + 1) / 2.0)


@lru_cache(maxsize=None)
def _bump_norm(k: int) -> float:
    val, err = integrate.quad(
        lambda r: _bump(r) * r ** (k - 1), 0.0, 1.0, epsabs=1e-15, epsrel=1e-13, limit=200
    )
    if err > 1e-11:
        raise QuadratureError("mollifier normalisation quadrature did not converge")
    return val


def mollifier_psi(r: float, k: int = 1) -> float:
    """Smooth even bump on (-1, 1), normalised against r^{k-1} surface measure.

    The scaling is chosen so that the k-radial profile integrates to total
    mass one: integral over (0, inf) of psi(r) r^{k-1} dr = 1 / area(S^{k-1}).
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be a positive integer")
    return _bump(float(r)) / (_sphere_area(k - 1) * _bump_norm(k))


def mollifier_Psi(cfg: SliceConfig, eps: float, x) -> float:
    """Psi_eps(x) = eps^{-k} psi(|x| / eps) on R^k; integrates to 1."""
    eps = float(eps)
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    coords = (float(x),) if isinstance(x, (int, float)) else tuple(float(c) for c in x)
    if len(coords) != cfg.k:
        raise ValueError(f"x has {len(coords)} coordinates, config needs {cfg.k}")
    r = math.sqrt(math.fsum(c * c for c in coords))
    return eps ** (-cfg.k) * mollifier_psi(r / eps, cfg.k)


def _phi_hat_quad(k: int, u: float) -> float:
    """Fourier transform of the unit-eps mollifier at |xi| = u, by quadrature."""
    if k == 1:
        f = lambda s: mollifier_psi(s, 1) * math.cos(_TWO_PI * u * s)
        val, err = integrate.quad(f, 0.0, 1.0, epsabs=1e-14, epsrel=1e-12, limit=300)
        val *= 2.0
    elif k == 2:
        f = lambda s: mollifier_psi(s, 2) * _scipy_j0(_TWO_PI * u * s) * s
        val, err = integrate.quad(f, 0.0, 1.0, epsabs=1e-14, epsrel=1e-12, limit=300)
        val *= _TWO_PI
    elif k == 3:
        if u == 0.0:
            return 1.0
        f = lambda s: mollifier_psi(s, 3) * s * math.sin(_TWO_PI * u * s)
        val, err = integrate.quad(f, 0.0, 1.0, epsabs=1e-14, epsrel=1e-12, limit=300)
        val *= 2.0 / u
    else:
        raise ValueError("mollifier transform implemented for k <= 3")
    if err > 1e-10:
        raise QuadratureError("mollifier transform quadrature did not converge")
    return val


_PSI_HAT_STEP = 0.005
_psi_hat_splines: dict[int, tuple[float, CubicSpline]] = {}


def _psi_hat_spline(k: int, umax: float) -> CubicSpline:
    umax = max(9.0, math.ceil(umax) + 1.0)
    if umax > 200.0:
        raise ValueError("mollifier transform table capped at |xi| = 200")
    cached = _psi_hat_splines.get(k)
    if cached is not None and cached[0] >= umax:
        return cached[1]
    nodes = np.arange(0.0, umax + _PSI_HAT_STEP, _PSI_HAT_STEP)
    vals = np.array([_phi_hat_quad(k, float(u)) for u in nodes])
    spline = CubicSpline(nodes, vals)
    _psi_hat_splines[k] = (umax, spline)
    return spline


def _psi_hat(k: int, u: float) -> float:
    return float(_psi_hat_spline(k, max(u, 1.0))(u))


_ENV_UMAX = 50
_ENV_SAFETY = 2.0
_ENV_EXTRAP_SAFETY = 8.0


@lru_cache(maxsize=None)
def _psi_hat_envelope(k: int):
    """Nonincreasing-from-the-right bound on |psi-hat|: band sups with safety.

    Band b holds the measured sup of |transform| over [b, b+1), scanned on a
    0.02 grid, times a safety factor, then cumulatively maxed from the right
    so env(u) dominates the transform everywhere at and beyond u. Past the
    scanned range a fitted exp(a - q sqrt(u)) decay (with its own, larger,
    safety factor) extends the table; the fit is validated in the tests.
    """
    step = 0.05  # ~10 samples per oscillation lobe; the x2 safety absorbs the rest
    grid = np.arange(0.0, _ENV_UMAX + step, step)
    vals = np.abs(np.array([_phi_hat_quad(k, float(u)) for u in grid]))
    sups = np.array([vals[(grid >= b) & (grid < b + 1)].max() for b in range(_ENV_UMAX)])
    sups *= _ENV_SAFETY
    # fit log sup = a - q sqrt(b) over the decaying range
    bs = np.arange(10, _ENV_UMAX, dtype=float)
    ys = np.log(sups[10:_ENV_UMAX])
    q, a = np.polyfit(-np.sqrt(bs), ys, 1)
    q = max(q, 0.5)
    tail_at_edge = _ENV_EXTRAP_SAFETY * math.exp(a - q * math.sqrt(_ENV_UMAX))
    bands = np.maximum.accumulate(np.maximum(sups, tail_at_edge)[::-1])[::-1]

    def env(u: float) -> float:
        if u < _ENV_UMAX:
            return float(bands[int(u)])
        return _ENV_EXTRAP_SAFETY * math.exp(a - q * math.sqrt(u))

    return env


# ---------------------------------------------------------------------------
# mollified cutoffs chi_eps and the squeeze chi_eps^±
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _leggauss(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _chi_row(l: int, t2: np.ndarray) -> np.ndarray:
    q = 1.0 - t2
    if l == 0:
        return (q > 0.0).astype(float)
    return np.where(q > 0.0, np.abs(q) ** (0.5 * l), 0.0)


def _panel_nodes(lo: float, hi: float, sub: str | None, n: int):
    """GL nodes/weights on [lo, hi], optionally under a quadratic endpoint map.

    sub = "lo" maps sigma = lo + tau^2, sub = "hi" maps sigma = hi - tau^2;
    either absorbs a half-power vanishing of the integrand at that endpoint
    (the cutoff dies like distance^(l/2) where the mollified ball crosses the
    unit sphere, and plain GL converges poorly on that).
    """
    xg, wg = _leggauss(n)
    if sub is None:
        mid, hw = 0.5 * (lo + hi), 0.5 * (hi - lo)
        return mid + hw * xg, hw * wg
    span = math.sqrt(hi - lo)
    tau = 0.5 * span * (xg + 1.0)
    w = 0.5 * span * wg * 2.0 * tau
    if sub == "lo":
        return lo + tau**2, w
    return hi - tau**2, w


def _inner_angle(l: int, k: int, r: float, es: float, nodes: int) -> float:
    """Integral over the angle between the bump offset and x of chi * sin^(k-2)."""
    a2 = r * r + es * es
    twore = 2.0 * r * es
    if twore <= 0.0:
        q = 1.0 - a2
        if q <= 0.0:
            return 0.0
        base = 1.0 if l == 0 else q ** (0.5 * l)
        xg, wg = _leggauss(nodes)
        theta = 0.5 * math.pi * (xg + 1.0)
        return base * float(np.sum(0.5 * math.pi * wg * np.sin(theta) ** (k - 2)))
    ustar = (a2 - 1.0) / twore
    if ustar >= 1.0:
        return 0.0
    if ustar <= -1.0:
        theta, wt = _panel_nodes(0.0, math.pi, None, nodes)
    else:
        # integrand vanishes like (theta* - theta)^(l/2) at the crossing angle
        theta, wt = _panel_nodes(0.0, math.acos(ustar), "hi", nodes)
    d2 = a2 - twore * np.cos(theta)
    return float(np.sum(wt * _chi_row(l, d2) * np.sin(theta) ** (k - 2)))


def _chi_eps_radial_nodes(cfg: SliceConfig, eps: float, r: float, nouter: int) -> float:
    """(Psi_eps * chi)(x) at |x| = r, reduced to a radial-plus-angle integral."""
    k, l = cfg.k, cfg.l
    b = abs(1.0 - r) / eps
    if r >= 1.0:
        if b >= 1.0:
            return 0.0
        panels = [(b, 1.0, "lo")]
    elif 0.0 < b < 1.0:
        panels = [(0.0, b, "hi"), (b, 1.0, "lo")]
    else:
        panels = [(0.0, 1.0, None)]

    total = 0.0
    for lo, hi, sub in panels:
        sig, wsig = _panel_nodes(lo, hi, sub, nouter)
        psi_vals = np.array([mollifier_psi(float(s), k) for s in sig])
        if k == 1:
            inner = _chi_row(l, (r - eps * sig) ** 2) + _chi_row(l, (r + eps * sig) ** 2)
            total += float(np.sum(wsig * psi_vals * inner))
            continue
        area = _sphere_area(k - 2)
        inner_vals = np.array([_inner_angle(l, k, r, eps * float(s), nouter) for s in sig])
        total += float(np.sum(wsig * psi_vals * sig ** (k - 1) * area * inner_vals))
    return total


def _chi_eps_radial(cfg: SliceConfig, eps: float, r: float) -> float:
    hi = _chi_eps_radial_nodes(cfg, eps, r, 96)
    lo = _chi_eps_radial_nodes(cfg, eps, r, 64)
    if abs(hi - lo) > 1e-8:
        raise QuadratureError(
            f"chi_eps quadrature disagreement {abs(hi - lo):.2e} at r={r:.6g}, eps={eps:.3g}"
        )
    return hi


def chi_eps(cfg: SliceConfig, eps: float, x) -> float:
    """Mollified cutoff (Psi_eps * chi)(x)."""
    CutoffProfile(cfg, float(eps), "none")
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    coords = (float(x),) if isinstance(x, (int, float)) else tuple(float(c) for c in x)
    if len(coords) != cfg.k:
        raise ValueError(f"x has {len(coords)} coordinates, config needs {cfg.k}")
    r = math.sqrt(math.fsum(c * c for c in coords))
    return _chi_eps_radial(cfg, float(eps), r)


def chi_eps_pm(cfg: SliceConfig, eps: float, sign: str, x) -> float:
    """Squeezing profiles chi_eps^±(x) = (1 -/+ eps)^{-l} chi_eps((1 -/+ eps) x)."""
    profile = CutoffProfile(cfg, float(eps), sign)
    if profile.sign == "none":
        return chi_eps(cfg, eps, x)
    coords = (float(x),) if isinstance(x, (int, float)) else tuple(float(c) for c in x)
    if len(coords) != cfg.k:
        raise ValueError(f"x has {len(coords)} coordinates, config needs {cfg.k}")
    r = math.sqrt(math.fsum(c * c for c in coords))
    a = 1.0 - eps if sign == "plus" else 1.0 + eps
    return a ** (-cfg.l) * _chi_eps_radial(cfg, float(eps), a * r)


# ---------------------------------------------------------------------------
# truncated Poisson sums with certified tails
# ---------------------------------------------------------------------------


def default_epsilon(cfg: SliceConfig, rho: float) -> float:
    """Mollification width balancing the main and tail contributions.

    rho^{-2k/(1-d+2k)} when k > (d+1)/2, else rho^{-(d+1)/2}; the two branch
    formulas agree at k = (d+1)/2. Clamped to the profile-validity range.
    """
    rho = float(rho)
    if not rho >= 2.0:
        raise ValueError("default_epsilon needs rho >= 2")
    d, k = cfg.d, cfg.k
    if 2 * k > d + 1:
        j = 2.0 * k / (1.0 - d + 2.0 * k)
    else:
        j = (d + 1) / 2.0
    return min(rho**-j, 0.49)


def _certified_tail(cfg: SliceConfig, rho: float, eps: float, a: float, m_cut: float) -> float:
    """Bound on |discarded terms|: shell counts x psi-hat envelope x crude chi-hat bound."""
    d, k, l = cfg.d, cfg.k, cfg.l
    env = _psi_hat_envelope(k)
    om_k = unit_ball_volume(k)
    cdk = _c_dk(cfg)
    half_diag = 0.5 * math.sqrt(k)
    scale = unit_ball_volume(l) * rho**d / a**d
    total = 0.0
    n = max(1, math.floor(m_cut))
    n_stop = n + 500000
    while n < n_stop:
        lo = max(n - half_diag, 0.0)
        count = om_k * ((n + 1 + half_diag) ** k - lo**k)
        t = rho * n / a
        term = count * env(eps * t) * cdk * t ** (-d / 2.0)
        total += term
        n += 1
        if term < 1e-22 * total and n > m_cut + 4:
            return scale * total
    raise QuadratureError("Poisson tail bound failed to converge")


def poisson_sum_approx(
    cfg: SliceConfig,
    offset,
    rho: float,
    eps: float,
    trunc: PoissonTruncation | float | None = None,
    sign: str = "none",
) -> PoissonApprox:
    """Truncated dual-lattice Poisson sum for the (signed) mollified volume.

    Keeps frequencies with |m| < max_freq_norm (strict; the default cutoff is
    4 / (eps rho)), weighting each by the offset character, the mollifier
    transform and the cutoff transform, all arguments scaled by 1/(1 -/+ eps)
    for the signed profiles. The m = 0 term is the exact ball volume
    omega_d rho^d (times the profile's rescaling). The certificate bounds
    everything discarded; if the caller passed a finite tail allowance and
    the certificate exceeds it, that is an error, not a silent pass.
    """
    rho = float(rho)
    if not (math.isfinite(rho) and rho > 0.0):
        raise ValueError("rho must be a positive finite real")
    eps = float(eps)
    CutoffProfile(cfg, eps, sign)
    if eps <= 0.0:
        raise ValueError("poisson_sum_approx requires eps > 0")
    if cfg.k == 0:
        raise ValueError("Poisson summation needs at least one lattice direction")
    off = _as_offset(offset, cfg.k)

    if trunc is None:
        m_cut = max(1.0, 4.0 / (eps * rho))
        allowance = math.inf
    elif isinstance(trunc, PoissonTruncation):
        m_cut, allowance = trunc.max_freq_norm, trunc.tail_bound
    else:
        m_cut, allowance = float(trunc), math.inf
        if not m_cut >= 1.0:
            raise ValueError("max_freq_norm must be >= 1")

    d, k, l = cfg.d, cfg.k, cfg.l
    a = {"plus": 1.0 - eps, "minus": 1.0 + eps, "none": 1.0}[sign]
    zero_term = unit_ball_volume(d) * rho**d / a**d
    scale = unit_ball_volume(l) * rho**d / a**d

    spline = _psi_hat_spline(k, eps * rho * m_cut / a)
    row_sums: list[float] = []
    nterms = 1  # the m = 0 term

    def handle_row(prefix: tuple[int, ...], pref2: float, pref_dot: float) -> None:
        nonlocal nterms
        w = math.sqrt(m_cut * m_cut - pref2)
        c_last = off.coords[k - 1]
        n = np.arange(math.ceil(-w), math.floor(w) + 1)
        if n.size == 0:
            return
        norm2 = pref2 + n.astype(np.float64) ** 2
        keep = norm2 < m_cut * m_cut
        if prefix == (0,) * (k - 1):
            keep &= n != 0
        n = n[keep]
        if n.size == 0:
            return
        nterms += n.size
        t = rho * np.sqrt(norm2[keep]) / a
        phases = np.cos(_TWO_PI * (pref_dot + c_last * n))
        psi_vals = spline(eps * t)
        chi_vals = np.array([chi_hat(cfg, float(tv)) for tv in t])
        row = phases * psi_vals * chi_vals
        chunk = 1 << 12
        for i in range(0, row.size, chunk):
            row_sums.append(float(np.sum(row[i : i + chunk])))

    def descend(i: int, prefix: tuple[int, ...], pref2: float, pref_dot: float) -> None:
        if i == k - 1:
            handle_row(prefix, pref2, pref_dot)
            return
        w = math.sqrt(m_cut * m_cut - pref2)
        for m in range(math.ceil(-w), math.floor(w) + 1):
            q2 = pref2 + m * m
            if q2 < m_cut * m_cut:
                descend(i + 1, prefix + (m,), q2, pref_dot + off.coords[i] * m)

    descend(0, (), 0.0, 0.0)
    value = zero_term + scale * compensated_sum(row_sums)
    tail = _certified_tail(cfg, rho, eps, a, m_cut)
    if tail > allowance:
        raise TailToleranceError(
            f"certified tail {tail:.3e} exceeds requested allowance {allowance:.3e}"
        )
    return PoissonApprox(
        value=value,
        tail_bound=tail,
        truncation=PoissonTruncation(m_cut, tail),
        terms=nterms,
        zero_term=zero_term,
    )
