"""vacnoise: quantum vacuum noise in uniformly time-dependent media and
its back-action on cosmic expansion.

The package splits into a small numerical kernel (quadrature, roots,
special functions, derivatives, seeded noise), analytic expansion
histories, the correlation-function closed forms, the causal
renormalization of the vacuum energy, the buoyancy-modified Friedmann
dynamics with the distance-matching tension fit, and mode-sum noise
synthesis with Monte Carlo validation. See the README for the CLI.
"""

__version__ = "0.1.0"

from .constants import CONSTANTS, PhysicalConstants
from .models import (
    CosmologyParams,
    ExpansionHistory,
    load_params,
    make_de_sitter,
    make_lcdm_history,
    make_power_law,
)
from .tension import TensionFit, fit_kappa, hubble_ratio, solve_omega_infinity

__all__ = [
    "__version__",
    "CONSTANTS",
    "PhysicalConstants",
    "CosmologyParams",
    "ExpansionHistory",
    "load_params",
    "make_de_sitter",
    "make_lcdm_history",
    "make_power_law",
    "TensionFit",
    "fit_kappa",
    "hubble_ratio",
    "solve_omega_infinity",
]
