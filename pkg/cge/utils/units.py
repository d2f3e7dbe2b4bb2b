"""Physical constants and the SI / eV / dimensionless conversion layer.

User-facing quantities are SI (m, K, Pa), material frequencies are photon
energies in eV. Dimensionless Lifshitz variables are produced only here.
"""
import math

from scipy import constants

HBAR = constants.hbar                 # J s
C_LIGHT = constants.c                 # m / s
K_B = constants.k                     # J / K
E_CHARGE = constants.e                # J / eV
FINE_STRUCTURE = constants.fine_structure

HBAR_C = HBAR * C_LIGHT               # J m
HBAR_C_EV_M = HBAR_C / E_CHARGE       # eV m
K_B_EV = K_B / E_CHARGE               # eV / K

# Default Fermi velocity of graphene, m/s
GRAPHENE_FERMI_VELOCITY = 9.0e5


def temperature_parameter(separation: float, temperature: float) -> float:
    """tau = 4 pi a k_B T / (hbar c); zeta_l = tau * l."""
    return 4.0 * math.pi * separation * K_B * temperature / HBAR_C


def to_dimensionless_energy(energy_ev, separation: float):
    """2 a E / (hbar c) for an energy E in eV (gap, plasma frequency, ...)."""
    return 2.0 * separation * energy_ev / HBAR_C_EV_M


def zeta_to_ev(zeta, separation: float):
    """Photon energy hbar*xi in eV of the dimensionless frequency zeta = 2 a xi / c."""
    return zeta * HBAR_C_EV_M / (2.0 * separation)


def matsubara_energy_ev(l, temperature: float):
    """hbar*xi_l = 2 pi k_B T l, in eV."""
    return 2.0 * math.pi * K_B_EV * temperature * l


def ideal_metal_pressure_t0(separation: float) -> float:
    """Closed form -pi^2 hbar c / (240 a^4) in Pa."""
    return -math.pi ** 2 * HBAR_C / (240.0 * separation ** 4)
