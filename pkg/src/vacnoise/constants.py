"""Physical constants (SI, CODATA 2018) and unit conversions.

Internally the package works in expansion units: times in 1/H0, lengths
in c/H0, densities in units of the critical density 3 H0^2/(8 pi G).
Everything in this module converts between those units and SI at the
boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# exact SI defining constants
C_LIGHT = 299792458.0            # m/s
HBAR = 1.054571817e-34           # J s
K_BOLTZMANN = 1.380649e-23       # J/K

# measured
G_NEWTON = 6.67430e-11           # m^3 / (kg s^2)
EPS0 = 8.8541878128e-12          # F/m
MU0 = 1.25663706212e-6           # N/A^2

# lengths and times
PARSEC = 3.0856775814913673e16   # m
MPC = PARSEC * 1e6
JULIAN_YEAR = 365.25 * 86400.0   # s
LIGHT_YEAR = C_LIGHT * JULIAN_YEAR
GLY = 1e9 * LIGHT_YEAR           # m


@dataclass(frozen=True)
class PhysicalConstants:
    """Bundle of the constants used across the package.

    Derived members (Planck length and mass, permittivity product) are
    computed from the primaries so the defining relations hold to
    machine precision.
    """

    c: float = C_LIGHT
    hbar: float = HBAR
    G: float = G_NEWTON
    kB: float = K_BOLTZMANN
    eps0: float = EPS0
    mu0: float = MU0

    @property
    def lP(self) -> float:
        """Planck length sqrt(hbar G / c^3) in meters."""
        return math.sqrt(self.hbar * self.G / self.c**3)

    @property
    def mP(self) -> float:
        """Planck mass sqrt(hbar c / G) in kilograms."""
        return math.sqrt(self.hbar * self.c / self.G)


CONSTANTS = PhysicalConstants()


def h0_si_from_km_s_mpc(h0: float) -> float:
    """Convert a Hubble constant from km/s/Mpc to 1/s."""
    return h0 * 1000.0 / MPC


def hubble_length(h0_si: float) -> float:
    """c/H0 in meters."""
    return C_LIGHT / h0_si


def hubble_time(h0_si: float) -> float:
    """1/H0 in seconds."""
    return 1.0 / h0_si


def critical_density(h0_si: float, const: PhysicalConstants = CONSTANTS) -> float:
    """Critical mass density 3 H0^2 / (8 pi G) in kg/m^3."""
    return 3.0 * h0_si**2 / (8.0 * math.pi * const.G)


def meters_to_gly(d: float) -> float:
    return d / GLY


def gly_to_meters(d: float) -> float:
    return d * GLY
