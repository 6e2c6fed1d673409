"""Volumes of ball slices over lattices of planes and what their errors do.

The central objects: the slice volume S(rho) of a radius-rho ball intersected
with an integer lattice of affine planes, its remainder R against the smooth
ball volume, certified two-sided Poisson approximants for S, the growth
exponents of R, paraboloid analogues, and the Landau Hamiltonian's integrated
density of states.
"""

__version__ = "0.1.0"

from .asymptotics import (
    ExponentPrediction,
    PowerLawFit,
    TorusQuadrature,
    constrained_power_law_fit,
    dyadic_rho_grid,
    fit_power_law,
    geometric_rho_grid,
    lower_exponent,
    offset_panel,
    panel_sup_remainders,
    remainder_fourier_coeff,
    upper_exponent,
)
from .fourier import (
    CutoffProfile,
    PoissonApprox,
    PoissonTruncation,
    QuadratureError,
    TailToleranceError,
    chi,
    chi_eps,
    chi_eps_pm,
    chi_hat,
    chi_hat_asymptotic,
    default_epsilon,
    mollifier_Psi,
    mollifier_psi,
    poisson_sum_approx,
)
from .lattice import (
    DEFAULT_BUDGET,
    EnumerationBudgetError,
    RemainderSample,
    SliceConfig,
    TorusOffset,
    enumerate_lattice_ball,
    remainder,
    remainder_scan,
    slice_volume,
    unit_ball_volume,
)
from .paraboloid import (
    ExpansionSpec,
    LandauQuery,
    ParaboloidErrorProfile,
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
from .specfun import (
    GammaPoleError,
    HalfInteger,
    bernoulli,
    bessel_j,
    compensated_sum,
    gamma,
    recip_gamma,
)

__all__ = [
    "__version__",
    "DEFAULT_BUDGET",
    "CutoffProfile",
    "EnumerationBudgetError",
    "ExpansionSpec",
    "ExponentPrediction",
    "GammaPoleError",
    "HalfInteger",
    "LandauQuery",
    "ParaboloidErrorProfile",
    "ParaboloidQuery",
    "PoissonApprox",
    "PoissonTruncation",
    "PowerLawFit",
    "QuadratureError",
    "RemainderSample",
    "SliceConfig",
    "TailToleranceError",
    "TorusOffset",
    "TorusQuadrature",
    "bernoulli",
    "bessel_j",
    "chi",
    "chi_eps",
    "chi_eps_pm",
    "chi_hat",
    "chi_hat_asymptotic",
    "compensated_sum",
    "constrained_power_law_fit",
    "default_epsilon",
    "dyadic_rho_grid",
    "enumerate_lattice_ball",
    "euler_maclaurin_E",
    "euler_maclaurin_exact",
    "expansion_spec",
    "faulhaber_sum",
    "fit_power_law",
    "gamma",
    "geometric_rho_grid",
    "landau_ids_direct",
    "landau_ids_via_paraboloid",
    "landau_leading_h3",
    "lower_exponent",
    "mollifier_Psi",
    "mollifier_psi",
    "offset_panel",
    "panel_sup_remainders",
    "paraboloid_asymptotic",
    "paraboloid_error_exponents",
    "paraboloid_measure",
    "poisson_sum_approx",
    "recip_gamma",
    "remainder",
    "remainder_fourier_coeff",
    "remainder_scan",
    "slice_volume",
    "unit_ball_volume",
    "upper_exponent",
]
