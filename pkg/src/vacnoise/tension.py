"""Conformal distance to last scattering and the Hubble-tension fit.

The CMB pins the acoustic scale; relating it to observed angles needs
the conformal distance d = c * integral da / (a^2 H). Holding d fixed
while the vacuum coupling kappa reduces the weight of matter forces the
late-time density omega_inf above its standard closure value, which
raises the present expansion rate above H0. This module computes d in
closed form (Gauss hypergeometric), solves the distance-matching
condition for omega_inf, and inverts the chain to fit kappa from a
measured rate ratio.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

from .constants import C_LIGHT, meters_to_gly
from .errors import DomainError, FitError
from .models import CosmologyParams
from .numerics import brent_root, hyp2f1, integrate

__all__ = [
    "TensionFit",
    "kappa_from_cutoff",
    "cutoff_from_kappa",
    "distance_lcdm_closed",
    "distance_modified",
    "distance_quadrature",
    "solve_omega_infinity",
    "hubble_ratio",
    "fit_kappa",
    "angular_scale",
    "tension_fit_json",
]

_KAPPA_GEOM = 8.0 / (9.0 * math.pi)


def kappa_from_cutoff(ell_over_lP: float) -> float:
    """Vacuum coupling kappa = (8 / 9 pi) (lP / ell)^2 from the cutoff ratio."""
    if ell_over_lP <= 0:
        raise DomainError("cutoff ratio must be positive")
    return _KAPPA_GEOM / ell_over_lP**2


def cutoff_from_kappa(kappa: float) -> float:
    """Inverse of kappa_from_cutoff; kappa = 0 maps to an unbounded cutoff."""
    if kappa < 0:
        raise DomainError("kappa must be non-negative")
    if kappa == 0.0:
        return math.inf
    return math.sqrt(_KAPPA_GEOM / kappa)


@dataclass(frozen=True)
class TensionFit:
    """Result bundle of a tension fit at one coupling value."""

    kappa: float
    ell_over_lP: float
    omega_inf: float
    hubble_ratio: float
    d_match_gly: float


def _hyp_factor(z: float) -> float:
    return hyp2f1(1.0 / 6.0, 0.5, 7.0 / 6.0, z)


def distance_lcdm_closed(params: CosmologyParams) -> float:
    """Conformal distance (meters) in the standard model, radiation and
    a_star neglected: (2c / H0 sqrt(Omega_M)) 2F1(1/6,1/2;7/6; -Omega_L/Omega_M)."""
    if params.omega_m <= 0:
        raise DomainError("distance needs Omega_M > 0")
    z = -params.omega_l / params.omega_m
    return 2.0 * C_LIGHT / (params.h0_si * math.sqrt(params.omega_m)) * _hyp_factor(z)


def distance_modified(params: CosmologyParams, omega_inf: float, kappa: float) -> float:
    """Conformal distance (meters) with matter weight reduced by 1 + 3 kappa.

    Obtained from the closed form by Omega_M -> Omega_M/(1+3 kappa) and
    the closure density -> omega_inf.
    """
    if params.omega_m <= 0:
        raise DomainError("distance needs Omega_M > 0")
    f = 1.0 + 3.0 * kappa
    z = -f * omega_inf / params.omega_m
    return (
        2.0 * C_LIGHT * math.sqrt(f) / (params.h0_si * math.sqrt(params.omega_m)) * _hyp_factor(z)
    )


def distance_quadrature(
    params: CosmologyParams,
    omega_inf: float | None = None,
    kappa: float | None = None,
    modified: bool = False,
    rel_tol: float = 1e-12,
) -> float:
    """Direct quadrature of d = c * int_{a*}^{1} da / (a^2 H(a)), in meters.

    Independent route used as the oracle for the closed forms; keeps the
    same Omega_R = 0 simplification but honours a_star from params. The
    integrand grows as a^(-1/2) toward a = 0 in the matter era, removed
    by the built-in u = sqrt(a) substitution hint.
    """
    if modified:
        if omega_inf is None or kappa is None:
            raise DomainError("modified quadrature distance needs omega_inf and kappa")
        om = params.omega_m / (1.0 + 3.0 * kappa)
        ol = omega_inf
    else:
        om, ol = params.omega_m, params.omega_l

    def integrand(a):
        return 1.0 / (a * a * math.sqrt(om * a**-3 + ol))

    res = integrate(
        integrand, params.a_star, 1.0, rel_tol=rel_tol, singularity="inv_sqrt_lower"
    )
    return C_LIGHT / params.h0_si * res.value


def solve_omega_infinity(params: CosmologyParams, kappa: float, tol: float = 1e-12) -> float:
    """omega_inf for which the modified distance equals the standard one.

    Root of the matching condition via Brent on a bracket around the
    closure value; the bracket is widened once before giving up.
    """
    if kappa < 0:
        raise DomainError("kappa must be non-negative")
    target = distance_lcdm_closed(params)

    def mismatch(oinf):
        return distance_modified(params, oinf, kappa) - target

    lo, hi = 0.5 * params.omega_l, 2.0 * params.omega_l
    for attempt in range(2):
        try:
            return brent_root(mismatch, lo, hi, tol=tol).root
        except Exception as exc:
            if attempt == 1:
                raise FitError(
                    "distance matching found no omega_inf bracket",
                    diagnostics={
                        "kappa": kappa,
                        "bracket": (lo, hi),
                        "d_lcdm_gly": meters_to_gly(target),
                        "mismatch_lo": mismatch(lo),
                        "mismatch_hi": mismatch(hi),
                    },
                ) from exc
            lo, hi = 0.1 * params.omega_l, 10.0 * params.omega_l


def hubble_ratio(params: CosmologyParams, kappa: float) -> float:
    """Present-day rate over H0: sqrt(omega_inf + Omega_M/(1+3 kappa)).

    omega_inf is obtained from the distance-matching condition, so this
    composes the full pipeline for a given coupling.
    """
    omega_inf = solve_omega_infinity(params, kappa)
    return math.sqrt(omega_inf + params.omega_m / (1.0 + 3.0 * kappa))


def fit_kappa(
    params: CosmologyParams,
    target_ratio: float,
    kappa_max: float = 0.1,
    tol: float = 1e-10,
) -> TensionFit:
    """Invert hubble_ratio: find kappa reproducing a measured ratio.

    target_ratio = 1 is the exact standard limit and short-circuits to
    kappa = 0 with an unbounded cutoff.
    """
    if target_ratio < 1.0:
        raise FitError(f"target ratio {target_ratio} below the standard value 1")
    if target_ratio == 1.0:
        kappa = 0.0
    else:
        hi_ratio = hubble_ratio(params, kappa_max)
        if target_ratio > hi_ratio:
            raise FitError(
                f"target ratio {target_ratio} above reach {hi_ratio:.6f} at kappa={kappa_max}",
                diagnostics={"kappa_max": kappa_max, "ratio_at_max": hi_ratio},
            )
        kappa = brent_root(
            lambda k: hubble_ratio(params, k) - target_ratio, 0.0, kappa_max, tol=tol
        ).root
    return tension_fit(params, kappa)


def tension_fit(params: CosmologyParams, kappa: float) -> TensionFit:
    """Assemble the full TensionFit record at a given coupling."""
    omega_inf = solve_omega_infinity(params, kappa)
    ratio = math.sqrt(omega_inf + params.omega_m / (1.0 + 3.0 * kappa))
    d = distance_modified(params, omega_inf, kappa)
    return TensionFit(
        kappa=kappa,
        ell_over_lP=cutoff_from_kappa(kappa),
        omega_inf=omega_inf,
        hubble_ratio=ratio,
        d_match_gly=meters_to_gly(d),
    )


def angular_scale(wavelength: float, distance: float) -> float:
    """Small-angle scale phi = lambda / d in radians."""
    if distance <= 0:
        raise DomainError("distance must be positive")
    return wavelength / distance


def tension_fit_json(fit: TensionFit, params: CosmologyParams, provenance: dict | None = None) -> str:
    """Serialize a fit with its inputs and build provenance to JSON."""
    payload = {
        **asdict(fit),
        "inputs": {
            "h0_km_s_mpc": params.h0_km_s_mpc,
            "omega_r": params.omega_r,
            "omega_m": params.omega_m,
            "omega_l": params.omega_l,
            "a_star": params.a_star,
        },
        "tolerances": {"root": 1e-12, "hyp2f1_term": 1e-16},
    }
    if payload["ell_over_lP"] == math.inf:
        payload["ell_over_lP"] = "unbounded"
    if provenance:
        payload["provenance"] = provenance
    return json.dumps(payload, indent=2, sort_keys=True)
