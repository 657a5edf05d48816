"""Cosmological parameter records and analytic expansion histories.

Time is measured in units of 1/H0 and lengths in c/H0 throughout; the
constants module converts to SI at the boundary. A history bundles the
scale factor a(t) with its rate H = adot/a and the first two rate
derivatives, which downstream modules (renormalization, noise synthesis,
dynamics checks) evaluate pointwise.
"""

from __future__ import annotations

import bisect
import math
import os
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .constants import h0_si_from_km_s_mpc
from .errors import DomainError, ModelError

__all__ = [
    "CosmologyParams",
    "ExpansionHistory",
    "make_de_sitter",
    "make_power_law",
    "make_lcdm_history",
    "load_params",
    "DEFAULTS",
]

# Measured parameter defaults; overridable via config file, environment
# and CLI flags. H0 is a config input, never hard-coded into physics.
DEFAULTS = {
    "h0_km_s_mpc": 67.36,
    "omega_r": 0.0,
    "omega_m": 0.3153,
    "omega_l": 0.6847,
    "omega_inf": None,
    "kappa": 0.0,
    "a_star": 0.0,
}


@dataclass(frozen=True)
class CosmologyParams:
    """Present-day densities, Hubble constant and vacuum coupling.

    omega_l is the LambdaCDM closure value; omega_inf is its analogue in
    the buoyancy-modified model and may be left unset until fitted.
    """

    h0_km_s_mpc: float = DEFAULTS["h0_km_s_mpc"]
    omega_r: float = DEFAULTS["omega_r"]
    omega_m: float = DEFAULTS["omega_m"]
    omega_l: float = DEFAULTS["omega_l"]
    omega_inf: float | None = None
    kappa: float = 0.0
    a_star: float = 0.0

    def __post_init__(self):
        if min(self.omega_r, self.omega_m, self.omega_l) < 0:
            raise DomainError("density fractions must be non-negative")
        if self.omega_inf is not None and self.omega_inf < 0:
            raise DomainError("omega_inf must be non-negative")
        if self.kappa < 0:
            raise DomainError("kappa must be non-negative")
        if not (0.0 <= self.a_star < 1.0):
            raise DomainError("a_star must lie in [0, 1)")
        if self.h0_km_s_mpc <= 0:
            raise DomainError("H0 must be positive")

    @property
    def h0_si(self) -> float:
        return h0_si_from_km_s_mpc(self.h0_km_s_mpc)

    def closure_residual(self) -> float:
        return self.omega_r + self.omega_m + self.omega_l - 1.0

    def assert_closure(self, tol: float = 1e-12) -> None:
        res = self.closure_residual()
        if abs(res) > tol:
            raise ModelError(f"Omega_R + Omega_M + Omega_L - 1 = {res:.3e} exceeds {tol}")

    def with_omega_inf(self, omega_inf: float) -> "CosmologyParams":
        return replace(self, omega_inf=omega_inf)


@dataclass(frozen=True)
class ExpansionHistory:
    """Scale-factor model a(t) with derivatives of the expansion rate.

    All callables are pure; instances are immutable and safe to share.
    kind tags the construction: 'deSitter', 'powerLaw', 'lcdmNumeric'
    or 'custom'.
    """

    a: Callable[[float], float]
    H: Callable[[float], float]
    Hdot: Callable[[float], float]
    Hddot: Callable[[float], float]
    kind: str
    domain: tuple[float, float] = (-math.inf, math.inf)
    meta: dict = field(default_factory=dict)

    def check_domain(self, t: float) -> None:
        lo, hi = self.domain
        if not (lo <= t <= hi):
            raise DomainError(f"t={t} outside history domain [{lo}, {hi}]")


def make_de_sitter(H: float, a0: float = 1.0) -> ExpansionHistory:
    """Exponential expansion a = a0 e^{Ht} at constant rate H."""
    if H <= 0 or a0 <= 0:
        raise DomainError("de Sitter history needs H > 0 and a0 > 0")
    return ExpansionHistory(
        a=lambda t: a0 * math.exp(H * t),
        H=lambda t: H,
        Hdot=lambda t: 0.0,
        Hddot=lambda t: 0.0,
        kind="deSitter",
        meta={"H": H, "a0": a0},
    )


def make_power_law(p: float) -> ExpansionHistory:
    """Power-law expansion a = t^p on t > 0 (p=2/3 matter, p=1/2 radiation)."""
    if p <= 0:
        raise DomainError("power-law exponent must be positive")

    def guard(t):
        if t <= 0:
            raise DomainError(f"power-law history defined for t > 0, got t={t}")
        return t

    return ExpansionHistory(
        a=lambda t: guard(t) ** p,
        H=lambda t: p / guard(t),
        Hdot=lambda t: -p / guard(t) ** 2,
        Hddot=lambda t: 2.0 * p / guard(t) ** 3,
        kind="powerLaw",
        domain=(0.0, math.inf),
        meta={"p": p},
    )


def _hubble_sq_terms(params: CosmologyParams, modified: bool):
    """(coefficient, power) entries of H^2/H0^2 = sum c_i a^(-n_i) + c_0."""
    if modified:
        if params.omega_inf is None:
            raise DomainError("modified history needs omega_inf set (fit it first)")
        k = params.kappa
        return [
            (params.omega_r / (1.0 + 4.0 * k), 4),
            (params.omega_m / (1.0 + 3.0 * k), 3),
            (params.omega_inf, 0),
        ]
    return [(params.omega_r, 4), (params.omega_m, 3), (params.omega_l, 0)]


def make_lcdm_history(
    params: CosmologyParams,
    modified: bool = False,
    a_min: float = 1e-4,
    a_max: float = 50.0,
    knots_per_decade: int = 160,
) -> ExpansionHistory:
    """History with H(a) from the (optionally buoyancy-modified) Friedmann law.

    a(t) comes from integrating adot = a H(a): t(a) knots are accumulated
    by adaptive quadrature of dt = da/(a H) on a log-spaced grid (relative
    tolerance 1e-10 per interval) and evaluation between knots uses cubic
    Hermite interpolation with the exact slopes da/dt = aH. The epoch is
    fixed by a(0) = 1. H, Hdot, Hddot are evaluated analytically in a via
    Hdot = (a/2) d(H^2)/da and one further a-derivative, then composed
    with a(t).
    """
    from .numerics import integrate  # local import to avoid a cycle at import time

    terms = _hubble_sq_terms(params, modified)

    def h2_of_a(a):
        return sum(c * a ** (-n) if n else c for c, n in terms)

    def dh2_da(a):
        return sum(-n * c * a ** (-n - 1) for c, n in terms if n)

    def d2h2_da2(a):
        return sum(n * (n + 1) * c * a ** (-n - 2) for c, n in terms if n)

    def H_of_a(a):
        h2 = h2_of_a(a)
        if h2 < 0:
            raise ModelError(f"H^2 = {h2:.3e} < 0 at a = {a}")
        return math.sqrt(h2)

    def Hdot_of_a(a):
        return 0.5 * a * dh2_da(a)

    def Hddot_of_a(a):
        # d(Hdot)/dt = a H d(Hdot)/da
        dHdot_da = 0.5 * dh2_da(a) + 0.5 * a * d2h2_da2(a)
        return a * H_of_a(a) * dHdot_da

    # knot table for t(a)
    n_dec = math.log10(a_max / a_min)
    n_knots = max(2, int(round(n_dec * knots_per_decade)) + 1)
    a_knots = np.geomspace(a_min, a_max, n_knots)
    # make sure a = 1 is a knot so a(0) = 1 holds exactly
    i1 = int(np.argmin(np.abs(a_knots - 1.0)))
    a_knots[i1] = 1.0
    dtda = lambda a: 1.0 / (a * H_of_a(a))
    t_knots = np.empty_like(a_knots)
    t_knots[i1] = 0.0
    for i in range(i1 + 1, n_knots):
        t_knots[i] = t_knots[i - 1] + integrate(
            dtda, a_knots[i - 1], a_knots[i], rel_tol=1e-11
        ).value
    for i in range(i1 - 1, -1, -1):
        t_knots[i] = t_knots[i + 1] - integrate(
            dtda, a_knots[i], a_knots[i + 1], rel_tol=1e-11
        ).value
    adot_knots = np.array([a * H_of_a(a) for a in a_knots])

    t_lo, t_hi = float(t_knots[0]), float(t_knots[-1])
    t_list = t_knots.tolist()

    def a_of_t(t):
        if not (t_lo <= t <= t_hi):
            raise DomainError(f"t={t} outside tabulated range [{t_lo:.6g}, {t_hi:.6g}]")
        j = bisect.bisect_right(t_list, t) - 1
        j = min(max(j, 0), n_knots - 2)
        h = t_knots[j + 1] - t_knots[j]
        s = (t - t_knots[j]) / h
        y0, y1 = a_knots[j], a_knots[j + 1]
        m0, m1 = adot_knots[j] * h, adot_knots[j + 1] * h
        s2, s3 = s * s, s * s * s
        return (
            (2 * s3 - 3 * s2 + 1) * y0
            + (s3 - 2 * s2 + s) * m0
            + (-2 * s3 + 3 * s2) * y1
            + (s3 - s2) * m1
        )

    return ExpansionHistory(
        a=a_of_t,
        H=lambda t: H_of_a(a_of_t(t)),
        Hdot=lambda t: Hdot_of_a(a_of_t(t)),
        Hddot=lambda t: Hddot_of_a(a_of_t(t)),
        kind="lcdmNumeric",
        domain=(t_lo, t_hi),
        meta={
            "params": params,
            "modified": modified,
            "H_of_a": H_of_a,
            "Hdot_of_a": Hdot_of_a,
            "Hddot_of_a": Hddot_of_a,
            "h2_of_a": h2_of_a,
            "a_range": (a_min, a_max),
        },
    )


_CONFIG_KEYS = {
    "h0_km_s_mpc": float,
    "omega_r": float,
    "omega_m": float,
    "omega_l": float,
    "omega_inf": float,
    "kappa": float,
    "a_star": float,
}

ENV_PREFIX = "VACNOISE_"


def load_params(path: str | None = None, env: dict | None = None, **overrides) -> CosmologyParams:
    """Build CosmologyParams from defaults, config file, environment, overrides.

    The config file is flat UTF-8 'key = value' lines; '#' starts a
    comment; all keys optional. Environment variables VACNOISE_<KEY>
    override the file; keyword overrides (CLI flags) take final
    precedence. Unknown keys in the file are rejected to catch typos.
    """
    values = dict(DEFAULTS)
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise DomainError(f"{path}:{lineno}: expected 'key = value'")
                key, _, val = line.partition("=")
                key = key.strip().lower()
                if key not in _CONFIG_KEYS:
                    raise DomainError(f"{path}:{lineno}: unknown key {key!r}")
                values[key] = _CONFIG_KEYS[key](val.strip())
    env = os.environ if env is None else env
    for key, conv in _CONFIG_KEYS.items():
        raw = env.get(ENV_PREFIX + key.upper())
        if raw is not None:
            values[key] = conv(raw)
    for key, val in overrides.items():
        if key not in _CONFIG_KEYS:
            raise DomainError(f"unknown parameter {key!r}")
        if val is not None:
            values[key] = val
    return CosmologyParams(**values)
