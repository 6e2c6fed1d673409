"""Self-contained special functions used everywhere else in the package.

Everything here is deliberately dependency-free (stdlib only) so the rest of
the package can be cross-checked against scipy in the test suite without the
two code paths sharing an implementation.

Conventions:
  * gamma() takes exact half-integer arguments through a rational recursion
    (no rounding until the final float conversion) and everything else
    through a Lanczos approximation.
  * bessel_j() covers real order nu that is a nonnegative integer or
    half-odd-integer, which is all the package needs (orders d/2).
  * bernoulli() returns exact fractions, B1 = -1/2 convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "HalfInteger",
    "GammaPoleError",
    "gamma",
    "recip_gamma",
    "bessel_j",
    "bernoulli",
    "compensated_sum",
]

SQRT_PI = math.sqrt(math.pi)
_TWO_PI = 2.0 * math.pi


class GammaPoleError(ValueError):
    """gamma() evaluated exactly at a nonpositive integer."""


@dataclass(frozen=True)
class HalfInteger:
    """An exact element of (1/2) * Z, stored as twice its value.

    Used wherever an order or exponent is known to be a half-integer so the
    integer/half-odd distinction never depends on floating-point equality.
    """

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, int):
            raise TypeError("HalfInteger.twice must be an int")
        if abs(self.twice) > 4000:
            raise ValueError("half-integer out of supported range")

    @classmethod
    def from_value(cls, x) -> "HalfInteger":
        """Coerce an int, an exactly-half-integral float, or a HalfInteger."""
        if isinstance(x, HalfInteger):
            return x
        if isinstance(x, int):
            return cls(2 * x)
        if isinstance(x, float):
            doubled = 2.0 * x
            if not doubled.is_integer():
                raise ValueError(f"{x!r} is not a half-integer")
            return cls(int(doubled))
        raise TypeError(f"cannot interpret {type(x).__name__} as HalfInteger")

    @property
    def value(self) -> float:
        return self.twice / 2.0

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __float__(self) -> float:
        return self.twice / 2.0


def _gamma_half_integer_exact(h: HalfInteger) -> Fraction:
    """Gamma at an exact half-integer as (rational) * sqrt(pi)^(twice odd).

    Returns the rational factor; the caller multiplies by sqrt(pi) when
    twice is odd.  Climbs up or down from Gamma(1) = 1 or Gamma(1/2) =
    sqrt(pi) with Gamma(t + 1) = t Gamma(t).
    """
    if h.is_integer:
        n = h.twice // 2
        if n <= 0:
            raise GammaPoleError(f"gamma pole at {n}")
        return Fraction(math.factorial(n - 1))
    coeff = Fraction(1)
    t = Fraction(1, 2)
    target = Fraction(h.twice, 2)
    while t < target:
        coeff *= t
        t += 1
    while t > target:
        t -= 1
        coeff /= t
    return coeff


# Lanczos approximation, g = 7, 9 coefficients.  Relative error below
# ~2e-15 on the positive half-line once reflection is applied.
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _gamma_lanczos(x: float) -> float:
    if x < 0.5:
        s = math.sin(math.pi * x)
        if s == 0.0:
            raise GammaPoleError(f"gamma pole at {x}")
        return math.pi / (s * _gamma_lanczos(1.0 - x))
    z = x - 1.0
    acc = _LANCZOS_C[0]
    for i in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * acc


def gamma(x) -> float:
    """Gamma function for real or HalfInteger argument.

    Half-integer arguments (including floats that are exactly half-integral)
    go through an exact rational recursion; other reals use Lanczos with
    reflection.  Raises GammaPoleError at nonpositive integers and OverflowError
    past the float range (around x = 172).
    """
    if isinstance(x, HalfInteger) or isinstance(x, int):
        h = HalfInteger.from_value(x)
    elif isinstance(x, float):
        doubled = 2.0 * x
        if math.isfinite(doubled) and doubled.is_integer() and abs(doubled) <= 4000:
            h = HalfInteger(int(doubled))
        else:
            if not math.isfinite(x):
                raise ValueError("gamma argument must be finite")
            return _gamma_lanczos(x)
    else:
        raise TypeError(f"unsupported gamma argument {type(x).__name__}")

    frac = _gamma_half_integer_exact(h)
    if h.is_integer:
        return float(frac)
    return float(frac) * SQRT_PI


def recip_gamma(x) -> float:
    """1 / gamma(x), returning exactly 0.0 at the poles.

    The zero return is what lets expansion coefficients with a gamma factor
    in the denominator vanish cleanly instead of raising.
    """
    try:
        g = gamma(x)
    except GammaPoleError:
        return 0.0
    except OverflowError:
        return 0.0
    if g == 0.0:
        return math.inf
    return 1.0 / g


# ---------------------------------------------------------------------------
# Bessel J of nonnegative integer or half-odd-integer order
# ---------------------------------------------------------------------------

_SERIES_Z_MAX = 12.0


def _bessel_series(nu: float, z: float) -> float:
    # ascending series; below z = 12 the terms decay fast enough that the
    # alternation never costs more than a couple of digits
    half = 0.5 * z
    term = half**nu / gamma(nu + 1.0)
    total = term
    m = 0
    q = -(half * half)
    while True:
        m += 1
        term *= q / (m * (nu + m))
        total += term
        if abs(term) <= 1e-18 * abs(total) + 5e-324 or m > 120:
            return total


def _hankel_pq(nu: float, z: float) -> tuple[float, float]:
    # asymptotic modulus/phase series; z >= 12 and nu <= 1 here, so the
    # smallest term is far below double precision
    mu = 4.0 * nu * nu
    p, q = 1.0, 0.0
    term = 1.0
    k = 0
    while True:
        k += 1
        term *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * z)
        if abs(term) < 1e-18 or k > 30:
            break
        if k % 2 == 1:
            q += term if (k // 2) % 2 == 0 else -term
        else:
            p += -term if (k // 2) % 2 == 1 else term
    return p, q


def _bessel_hankel(nu: float, z: float) -> float:
    p, q = _hankel_pq(nu, z)
    omega = z - nu * (math.pi / 2.0) - math.pi / 4.0
    return math.sqrt(2.0 / (math.pi * z)) * (p * math.cos(omega) - q * math.sin(omega))


def _bessel_int_large(n: int, z: float) -> float:
    j0 = _bessel_hankel(0.0, z)
    if n == 0:
        return j0
    j1 = _bessel_hankel(1.0, z)
    if n == 1:
        return j1
    if n < z:
        # upward recurrence is stable while the order stays below z
        jm, jc = j0, j1
        for k in range(1, n):
            jm, jc = jc, (2.0 * k / z) * jc - jm
        return jc
    # Miller downward recurrence, normalised against whichever of J0, J1
    # is larger in magnitude
    start = n + int(math.sqrt(40.0 * n)) + 14
    fp = 0.0
    fc = 1e-30
    f_n = f_1 = f_0 = 0.0
    for k in range(start, 0, -1):
        fm = (2.0 * k / z) * fc - fp
        fp, fc = fc, fm
        if abs(fc) > 1e250:
            fc *= 1e-250
            fp *= 1e-250
            f_n *= 1e-250
        if k - 1 == n:
            f_n = fc
    f_1, f_0 = fp, fc
    if abs(j0) >= abs(j1):
        return f_n * (j0 / f_0)
    return f_n * (j1 / f_1)


def _spherical_large(n: int, z: float) -> float:
    s0 = math.sin(z) / z
    if n == 0:
        return s0
    s1 = s0 / z - math.cos(z) / z
    if n == 1:
        return s1
    if n < z:
        sm, sc = s0, s1
        for k in range(1, n):
            sm, sc = sc, ((2.0 * k + 1.0) / z) * sc - sm
        return sc
    start = n + int(math.sqrt(40.0 * n)) + 14
    fp = 0.0
    fc = 1e-30
    f_n = 0.0
    for k in range(start, 0, -1):
        fm = ((2.0 * k + 1.0) / z) * fc - fp
        fp, fc = fc, fm
        if abs(fc) > 1e250:
            fc *= 1e-250
            fp *= 1e-250
            f_n *= 1e-250
        if k - 1 == n:
            f_n = fc
    f_1, f_0 = fp, fc
    if abs(s0) >= abs(s1):
        return f_n * (s0 / f_0)
    return f_n * (s1 / f_1)


def bessel_j(nu, z: float) -> float:
    """J_nu(z) for nu a nonnegative integer or half-odd-integer, z >= 0.

    Branches: ascending series for z < 12 (all orders), and for z >= 12
    either Hankel asymptotics at order 0/1 plus a stable recurrence
    (integer nu) or exact spherical closed forms plus the same recurrence
    logic (half-odd nu).
    """
    h = HalfInteger.from_value(nu)
    if h.twice < 0:
        raise ValueError("bessel_j requires nu >= 0")
    if not (isinstance(z, (int, float)) and math.isfinite(z)):
        raise ValueError("bessel_j requires finite z")
    z = float(z)
    if z < 0.0:
        raise ValueError("bessel_j requires z >= 0")
    if z == 0.0:
        return 1.0 if h.twice == 0 else 0.0
    if z < _SERIES_Z_MAX:
        return _bessel_series(h.value, z)
    if h.is_integer:
        return _bessel_int_large(h.twice // 2, z)
    n = (h.twice - 1) // 2
    return math.sqrt(2.0 * z / math.pi) * _spherical_large(n, z)


# ---------------------------------------------------------------------------
# Bernoulli numbers and compensated summation
# ---------------------------------------------------------------------------

_BERNOULLI_CACHE: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B1 = -1/2 convention)."""
    if not isinstance(n, int) or n < 0:
        raise ValueError("bernoulli index must be a nonnegative integer")
    while len(_BERNOULLI_CACHE) <= n:
        m = len(_BERNOULLI_CACHE)
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * _BERNOULLI_CACHE[j]
        _BERNOULLI_CACHE.append(-acc / (m + 1))
    return _BERNOULLI_CACHE[n]


def compensated_sum(values) -> float:
    """Neumaier compensated sum of an iterable of floats.

    Keeps a running correction so that cancellations like
    [1e16, 1.0, -1e16] come out exact.
    """
    total = 0.0
    comp = 0.0
    for v in values:
        x = float(v)
        t = total + x
        if abs(total) >= abs(x):
            comp += (total - t) + x
        else:
            comp += (x - t) + total
        total = t
    return total + comp
