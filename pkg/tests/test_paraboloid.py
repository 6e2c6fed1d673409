"""Tests for paraboloid slice measures, expansions, and the Landau IDS."""

import math
from fractions import Fraction

import numpy as np
import pytest

from latslice.asymptotics import dyadic_rho_grid, fit_power_law
from latslice.lattice import unit_ball_volume
from latslice.paraboloid import (
    ExpansionSpec,
    LandauQuery,
    ParaboloidQuery,
    euler_maclaurin_E,
    euler_maclaurin_exact,
    expansion_spec,
    faulhaber_sum,
    landau_ids_direct,
    landau_ids_via_paraboloid,
    landau_leading_h3,
    paraboloid_asymptotic,
    paraboloid_error_exponents,
    paraboloid_measure,
)


# ---------------------------------------------------------------------------
# the measure itself
# ---------------------------------------------------------------------------


def test_paraboloid_measure_full_ball_slices():
    # d = 2, k = 1: P(3.5) = 2 (sqrt 3.5 + sqrt 2.5 + sqrt 1.5 + sqrt 0.5)
    got = paraboloid_measure(ParaboloidQuery(2, 1, 3.5))
    want = 2.0 * (math.sqrt(3.5) + math.sqrt(2.5) + math.sqrt(1.5) + math.sqrt(0.5))
    assert got == pytest.approx(want, rel=1e-14)
    assert got == pytest.approx(10.7676384, abs=1e-6)


def test_paraboloid_measure_pure_count():
    # d = k = 2 reduces to counting integers |n| < sqrt(2.2 - j): 3 + 3 + 1
    assert paraboloid_measure(ParaboloidQuery(2, 2, 2.2)) == 7.0


def test_paraboloid_measure_small_rho_single_term():
    assert paraboloid_measure(ParaboloidQuery(3, 1, 0.5)) == pytest.approx(
        0.5 * math.pi, rel=1e-15
    )
    assert paraboloid_measure(ParaboloidQuery(2, 1, 0.0)) == 0.0


def test_paraboloid_measure_mixed_split_against_hand_sum():
    # d = 3, k = 2: slices are (2,1) ball sections at radii sqrt(5.5 - j)
    got = paraboloid_measure(ParaboloidQuery(3, 2, 5.5))
    want = 0.0
    for j in range(6):
        r2 = 5.5 - j
        r = math.sqrt(r2)
        n_max = math.floor(r) if r != math.floor(r) else math.floor(r) - 1
        want += 2.0 * math.fsum(
            math.sqrt(r2 - n * n) for n in range(-n_max, n_max + 1)
        )
    assert got == pytest.approx(want, rel=1e-13)


def test_paraboloid_query_validation():
    with pytest.raises(ValueError):
        ParaboloidQuery(1, 1, 1.0)
    with pytest.raises(ValueError):
        ParaboloidQuery(3, 0, 1.0)
    with pytest.raises(ValueError):
        ParaboloidQuery(3, 4, 1.0)
    with pytest.raises(ValueError):
        ParaboloidQuery(3, 1, -0.5)
    with pytest.raises(ValueError):
        LandauQuery(1, 2.0)


# ---------------------------------------------------------------------------
# expansions
# ---------------------------------------------------------------------------


def test_expansion_spec_d3():
    spec = expansion_spec(3, 1)
    assert spec.coefficients == ((2.0, 0.5), (1.0, 0.5), (0.0, pytest.approx(1.0 / 12.0)))
    assert spec.evaluate(4.0) == pytest.approx(10.0 + 1.0 / 12.0, rel=1e-15)
    assert euler_maclaurin_E(3, 1, 4.0) == spec.evaluate(4.0)


def test_expansion_spec_even_dimension_coefficient():
    # d = 4, first correction: B_2/2! * Gamma(5/2)/Gamma(3/2) = 1/12 * 3/2
    spec = expansion_spec(4, 1)
    power, coeff = spec.coefficients[2]
    assert power == 0.5
    assert coeff == pytest.approx(0.125, rel=1e-14)


def test_expansion_spec_pole_terms_vanish():
    # d = 3, k = 2 hits the reciprocal gamma pole: coefficient exactly zero
    spec = expansion_spec(3, 2)
    assert spec.coefficients[3] == (-2.0, 0.0)


def test_expansion_spec_invariants_enforced():
    with pytest.raises(ValueError):
        ExpansionSpec(3, 0, ((2.0, 0.5),))  # too few terms
    with pytest.raises(ValueError):
        ExpansionSpec(3, 0, ((2.0, 0.5), (2.5, 0.5)))  # powers not decreasing
    with pytest.raises(ValueError):
        ExpansionSpec(3, 0, ((1.5, 0.5), (1.0, 0.5)))  # wrong leading power
    with pytest.raises(ValueError):
        ExpansionSpec(3, 0, ((2.0, 0.7), (1.0, 0.5)))  # wrong leading coefficient
    with pytest.raises(ValueError):
        expansion_spec(3, 1).evaluate(0.0)
    with pytest.raises(ValueError):
        expansion_spec(0, 1)
    with pytest.raises(ValueError):
        expansion_spec(3, -1)


def test_euler_maclaurin_exact_matches_power_sums():
    # odd d: the expansion at integer heights reproduces sum_{j<=a} j^((d-1)/2)
    # exactly, with n = floor((d-1)/4) correction terms
    for d in (3, 5, 7):
        n = (d - 1) // 4
        m = (d - 1) // 2
        for a in (0, 1, 7, 100):
            exact = euler_maclaurin_exact(d, n, a)
            assert exact == Fraction(faulhaber_sum(m, a)), (d, a)


def test_euler_maclaurin_exact_validation():
    with pytest.raises(ValueError):
        euler_maclaurin_exact(4, 1, 10)  # even d has irrational terms
    with pytest.raises(ValueError):
        euler_maclaurin_exact(3, 2, 10)  # negative powers at integers
    with pytest.raises(ValueError):
        euler_maclaurin_exact(3, 1, -1)


def test_faulhaber_sum():
    assert faulhaber_sum(2, 3) == 14
    assert faulhaber_sum(0, 5) == 6
    assert faulhaber_sum(3, 0) == 0
    with pytest.raises(ValueError):
        faulhaber_sum(-1, 3)
    with pytest.raises(ValueError):
        faulhaber_sum(2, -1)


# ---------------------------------------------------------------------------
# error profiles and asymptotics
# ---------------------------------------------------------------------------


def test_error_profile_full_ball_slices():
    prof = paraboloid_error_exponents(3, 1)
    assert prof.order == 1
    assert prof.stated_exponent == 0.0
    assert prof.alt_exponent is None and not prof.log_factor
    assert paraboloid_error_exponents(7, 1).order == 2


def test_error_profile_pure_count():
    prof = paraboloid_error_exponents(3, 3)
    assert prof.order == 0
    assert prof.stated_exponent == pytest.approx(4.0 / 3.0)
    assert paraboloid_error_exponents(2, 2).stated_exponent == pytest.approx(1.0)


def test_error_profile_lattice_heavy():
    prof = paraboloid_error_exponents(5, 4)
    assert prof.order == 0
    assert prof.stated_exponent == pytest.approx(1.0)
    assert prof.alt_exponent == pytest.approx(2.0)
    assert not prof.log_factor


def test_error_profile_plane_heavy_and_log_boundary():
    prof = paraboloid_error_exponents(4, 2)
    assert prof.order == 0
    assert prof.stated_exponent == pytest.approx(2.0)
    assert prof.alt_exponent == pytest.approx(1.5)
    assert not prof.log_factor
    assert paraboloid_error_exponents(4, 3).log_factor  # 2k = d + 2 exactly
    assert paraboloid_error_exponents(12, 2).order == 1


def test_error_profile_validation():
    with pytest.raises(ValueError):
        paraboloid_error_exponents(1, 1)
    with pytest.raises(ValueError):
        paraboloid_error_exponents(3, 0)
    with pytest.raises(ValueError):
        paraboloid_error_exponents(3, 4)


def test_paraboloid_asymptotic_value_and_yardstick():
    value, yard = paraboloid_asymptotic(3, 1, 100.0)
    assert value == pytest.approx(math.pi * (5000.0 + 50.0 + 1.0 / 12.0), rel=1e-14)
    assert yard == 1.0  # stated exponent 0
    _, yard_log = paraboloid_asymptotic(4, 3, 10.0)
    assert yard_log == pytest.approx(100.0 * math.log(10.0), rel=1e-14)
    with pytest.raises(ValueError):
        paraboloid_asymptotic(3, 1, 0.0)


def test_paraboloid_expansion_error_stays_small_k1():
    # |P - omega_2 E_1| for d = 3 never exceeds 0.5 at any probed height
    for rho in (10.0, 100.0, 1000.0, 123456.7):
        p = paraboloid_measure(ParaboloidQuery(3, 1, rho))
        asym, _ = paraboloid_asymptotic(3, 1, rho)
        assert abs(p - asym) < 0.5, rho


def test_paraboloid_error_slope_pure_count():
    # fitted error growth stays below the stated yardstick exponent
    # (measured 0.66 vs 1.0 for d = 2, 1.16 vs 4/3 for d = 3)
    for d in (2, 3):
        stated = paraboloid_error_exponents(d, d).stated_exponent
        pts = []
        for rho in dyadic_rho_grid(3, 8, per_octave=4):
            p = paraboloid_measure(ParaboloidQuery(d, d, rho))
            asym, _ = paraboloid_asymptotic(d, d, rho)
            err = abs(p - asym)
            if err > 0.0:
                pts.append((rho, err))
        fit = fit_power_law(pts)
        assert fit.slope <= stated + 0.15, (d, fit)


# ---------------------------------------------------------------------------
# Landau levels
# ---------------------------------------------------------------------------


def test_landau_ids_planar_steps():
    # d = 2: a flat count of filled levels, jumping at lambda = 2n + 1
    assert landau_ids_direct(LandauQuery(2, 0.5)) == 0.0
    assert landau_ids_direct(LandauQuery(2, 1.0)) == 0.0
    assert landau_ids_direct(LandauQuery(2, 2.9)) == pytest.approx(1.0 / (2.0 * math.pi))
    assert landau_ids_direct(LandauQuery(2, 3.1)) == pytest.approx(1.0 / math.pi)
    # strict counting: the level sitting exactly at lambda is not included
    assert landau_ids_direct(LandauQuery(2, 3.0)) == pytest.approx(1.0 / (2.0 * math.pi))
    assert landau_ids_direct(LandauQuery(2, 5.0)) == pytest.approx(1.0 / math.pi)


def test_landau_ids_three_dimensional_hand_value():
    # two filled levels at lambda = 4: gaps 3 and 1, weight 1/(2 pi^2)
    got = landau_ids_direct(LandauQuery(3, 4.0))
    assert got == pytest.approx((math.sqrt(3.0) + 1.0) / (2.0 * math.pi**2), rel=1e-14)


def test_landau_cross_formula_agreement():
    rng = np.random.default_rng(5)
    for d in (3, 4, 5):
        for lam in rng.uniform(1.01, 60.0, 20):
            q = LandauQuery(d, float(lam))
            direct = landau_ids_direct(q)
            via = landau_ids_via_paraboloid(q)
            assert via == pytest.approx(direct, rel=1e-12), (d, lam)


def test_landau_cross_formula_at_spectral_edge():
    # both routes drop the edge level, so they agree right on it
    q = LandauQuery(3, 5.0)
    assert landau_ids_via_paraboloid(q) == pytest.approx(
        landau_ids_direct(q), rel=1e-15
    )


def test_landau_ids_below_ground_level():
    for d in (2, 3, 5):
        assert landau_ids_direct(LandauQuery(d, 0.99)) == 0.0
    assert landau_ids_via_paraboloid(LandauQuery(3, 1.0)) == 0.0


def test_landau_paraboloid_route_needs_transverse_directions():
    with pytest.raises(ValueError):
        landau_ids_via_paraboloid(LandauQuery(2, 5.0))


def test_landau_ids_monotone():
    lams = np.linspace(0.5, 20.0, 200)
    vals = [landau_ids_direct(LandauQuery(3, float(l))) for l in lams]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_landau_leading_term():
    assert landau_leading_h3(4.0) == pytest.approx(8.0 / (6.0 * math.pi**2), rel=1e-15)
    with pytest.raises(ValueError):
        landau_leading_h3(0.5)
