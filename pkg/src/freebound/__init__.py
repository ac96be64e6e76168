"""freebound: rhombus tilings / non-intersecting lattice paths with a free
boundary - exact q-counting, Monte-Carlo endpoint sampling, closed-form limit
densities, a numerical resolvent solver for constrained boundaries, and
arctic-curve / slope-field consistency checks.
"""

__version__ = "0.1.0"

from .arctic import cuthex_arctic, hexagon_arctic, slope_density_consistency, slope_field
from .density import (
    Band,
    DensityProfile,
    halfcut_rho,
    hexagon_solution,
    qcut_band,
    qcut_rho,
    triangle_rho,
    tsscpp_rho,
    two_corner_solution,
    uniform_band,
    uniform_rho,
)
from .enumeration import (
    CUT_HEXAGON,
    HALF_CUT_HEXAGON,
    EndpointConfig,
    RegionSpec,
    brute_force_z,
    exact_distribution,
    q_symmetry_residual,
    reflect_config,
    z_det,
    z_product,
)
from .exactq import binomial, q_binomial, q_factorial
from .functional import rate_functional
from .quadrature import pv_integral
from .resolvent import ResolventProblem, kernel_identities_check, solve
from .sampler import empirical_density, exact_sampler, mcmc_run

__all__ = [
    "Band",
    "CUT_HEXAGON",
    "DensityProfile",
    "EndpointConfig",
    "HALF_CUT_HEXAGON",
    "RegionSpec",
    "ResolventProblem",
    "binomial",
    "brute_force_z",
    "cuthex_arctic",
    "empirical_density",
    "exact_distribution",
    "exact_sampler",
    "halfcut_rho",
    "hexagon_arctic",
    "hexagon_solution",
    "kernel_identities_check",
    "mcmc_run",
    "pv_integral",
    "q_binomial",
    "q_factorial",
    "q_symmetry_residual",
    "qcut_band",
    "qcut_rho",
    "rate_functional",
    "reflect_config",
    "slope_density_consistency",
    "slope_field",
    "solve",
    "triangle_rho",
    "tsscpp_rho",
    "two_corner_solution",
    "uniform_band",
    "uniform_rho",
    "z_det",
    "z_product",
]
