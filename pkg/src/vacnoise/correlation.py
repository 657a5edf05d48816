"""Closed-form vacuum correlation functions in conformally flat media.

Everything here works in natural units: c = 1, times in 1/H, comoving
radii in the same length unit as c * tau. In SI the correlation
magnitudes underflow doubles, so conversion happens at the boundary
(only the Gibbons-Hawking temperature is returned in kelvin).

The central object is the equal-state correlation K of the field noise,
which depends on the spacetime interval only: K = -1/(4 pi^2 s^2) with
s^2 = c^2 tau^2 - r^2. Noise is anti-correlated inside the light cone
(s^2 > 0) and correlated outside. The dissipation counterpart is a pair
of delta functions on the cone, and a Hilbert transform in the
conformal-time difference connects the two; hilbert_fdt_check verifies
that connection with a causal delta sequence.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .constants import CONSTANTS
from .errors import DomainError, SingularityError
from .numerics import integrate, principal_value

__all__ = [
    "SpacetimeInterval",
    "vacuum_correlation",
    "desitter_conformal_tau",
    "thermal_correlation",
    "thermal_log_derivative",
    "kms_check",
    "conformal_tau_flip_residual",
    "hilbert_fdt_check",
    "smoothed_dissipation",
    "gibbons_hawking_temperature",
]

_CONE_GUARD = 1e-12


@dataclass(frozen=True)
class SpacetimeInterval:
    """Conformal-time difference and comoving radius of a point pair."""

    tau: float
    r: float
    c: float = 1.0

    def __post_init__(self):
        if self.r < 0:
            raise DomainError("radius must be non-negative")

    @property
    def s2(self) -> float:
        return (self.c * self.tau) ** 2 - self.r**2


def vacuum_correlation(interval: SpacetimeInterval) -> float:
    """Vacuum noise correlation K = -1 / (4 pi^2 s^2).

    Raises SingularityError within a relative guard band of the light
    cone instead of returning huge values.
    """
    s2 = interval.s2
    scale = (interval.c * interval.tau) ** 2 + interval.r**2
    if abs(s2) < _CONE_GUARD * scale or scale == 0.0:
        raise SingularityError(f"interval too close to the light cone (s^2 = {s2:.3e})")
    return -1.0 / (4.0 * math.pi**2 * s2)


def desitter_conformal_tau(H: float, a: float, theta):
    """Conformal-time difference (2 / aH) sinh(H theta / 2) for constant H.

    Accepts complex theta; used both directly and for the thermal-state
    analytic continuation.
    """
    if H <= 0 or a <= 0:
        raise DomainError("need H > 0 and a > 0")
    if isinstance(theta, complex):
        return 2.0 / (a * H) * cmath.sinh(H * theta / 2.0)
    return 2.0 / (a * H) * math.sinh(H * theta / 2.0)


def thermal_log_derivative(H: float, theta: float, rho: float) -> float:
    """d/d rho of ln[(e^{H theta} - e^{H rho})(e^{H theta} - e^{-H rho})].

    Hand-reduced to -H sinh(H rho) / (cosh(H theta) - cosh(H rho)), which
    avoids the exponential cancellation of the raw form; unit-tested
    against fd_derivative of the logarithm.
    """
    denom = math.cosh(H * theta) - math.cosh(H * rho)
    if denom == 0.0:
        raise SingularityError("thermal correlation pole at |theta| = |rho|")
    return -H * math.sinh(H * rho) / denom


def thermal_correlation(H: float, theta: float, rho: float) -> float:
    """Correlation of thermal noise in static space at temperature H/(2 pi).

    Equals the periodic image sum of the vacuum form over shifts
    theta -> theta - 2 pi i n / H, assembled here as a log derivative:

        K_th = sinh(H rho) / (8 pi^2 rho (cosh(H rho) - cosh(H theta)))

    For rho -> 0 this approaches the constant-rate expansion correlation
    (local observers see a thermal state); at finite rho the two differ.
    """
    if H <= 0:
        raise DomainError("need H > 0")
    if rho == 0.0:
        raise SingularityError("thermal correlation needs rho != 0 (use the vacuum form)")
    return thermal_log_derivative(H, theta, rho) / (8.0 * math.pi**2 * rho)


def _desitter_wightman(H: float, a: float, r: float, theta) -> complex:
    tau = desitter_conformal_tau(H, a, theta)
    s2 = tau * tau - r * r
    if s2 == 0:
        raise SingularityError("light cone")
    return -1.0 / (4.0 * math.pi**2 * s2)


def kms_check(H: float, theta: float, r: float, a: float = 1.0) -> float:
    """Residual |f(theta - 2 pi i / H) - conj(f(theta))| of the thermal identity.

    f is the analytic two-point function built from the constant-rate
    closed forms; the identity holds because the conformal-time
    difference flips sign under the imaginary period, sinh(x - i pi) =
    -sinh(x), while the correlation depends on its square.
    """
    tau_real = desitter_conformal_tau(H, a, theta)
    if abs(tau_real**2 - r * r) < _CONE_GUARD * (tau_real**2 + r * r):
        raise SingularityError("interval too close to the light cone")
    shifted = complex(theta, -2.0 * math.pi / H)
    lhs = _desitter_wightman(H, a, r, shifted)
    rhs = _desitter_wightman(H, a, r, complex(theta, 0.0)).conjugate()
    return abs(lhs - rhs)


def conformal_tau_flip_residual(H: float, a: float, theta: float) -> float:
    """|tau(theta - 2 pi i / H) + tau(theta)|, zero in exact arithmetic."""
    shifted = desitter_conformal_tau(H, a, complex(theta, -2.0 * math.pi / H))
    return abs(shifted + desitter_conformal_tau(H, a, theta))


def smoothed_dissipation(interval: SpacetimeInterval, width: float):
    """Dissipation with the light-cone deltas smoothed causally.

    The retarded pulse delta(tau0 - r/c) is widened into the normalized
    half-Gaussian arriving at and after tau0 = r/c (a physical pulse of
    finite duration cannot arrive early); the advanced one mirrors it
    before tau0 = -r/c. The construction keeps Gamma antisymmetric in
    tau0 exactly. First moments of the one-sided kernels are O(width),
    so the reconstructed correlation converges at first order.
    Returns (gamma callable, bump support windows).
    """
    if width <= 0:
        raise DomainError("width must be positive")
    if interval.r <= 0:
        raise DomainError("smoothing needs r > 0")
    t0 = interval.r / interval.c
    norm = 2.0 / (width * math.sqrt(2.0 * math.pi))
    pref = -1.0 / (8.0 * math.pi * interval.r * interval.c)

    def half_gauss(x, side):
        if side * x < 0:
            return 0.0
        return norm * math.exp(-0.5 * (x / width) ** 2)

    def gamma(tau0: float) -> float:
        return pref * (half_gauss(tau0 - t0, +1) - half_gauss(tau0 + t0, -1))

    span = 14.0 * width
    windows = ((-t0 - span, -t0), (t0, t0 + span))
    return gamma, windows


def hilbert_fdt_check(width: float, interval: SpacetimeInterval, rel_tol: float = 1e-11) -> float:
    """|Hilbert-reconstructed correlation - closed form| for one smoothing width.

    Builds the smoothed dissipation, applies the principal-value Hilbert
    transform K(tau) = -(1/pi) P int Gamma(tau0) / (tau0 - tau) d tau0,
    and compares with vacuum_correlation. Must vanish (first order in
    width) as the smoothing is refined.
    """
    gamma, windows = smoothed_dissipation(interval, width)
    tau = interval.tau
    integrand = lambda u: gamma(u) / (u - tau)
    total = 0.0
    for lo, hi in windows:
        if lo < tau < hi:
            total += principal_value(integrand, tau, lo, hi, rel_tol=rel_tol)
        else:
            total += integrate(integrand, lo, hi, rel_tol=rel_tol, abs_tol=1e-30).value
    reconstructed = -total / math.pi
    return abs(reconstructed - vacuum_correlation(interval))


def gibbons_hawking_temperature(H: float) -> float:
    """Temperature hbar H / (2 pi kB) in kelvin for an expansion rate H in 1/s."""
    if H <= 0:
        raise DomainError("need H > 0")
    return CONSTANTS.hbar * H / (2.0 * math.pi * CONSTANTS.kB)
