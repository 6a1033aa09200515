# src/core/units.py
"""
Unit conversions between the conventional units used in configs and on the
command line (nm, ps, GHz, km) and the SI units used inside every computation.

All boundary conversions go through this module.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.constants import c as SPEED_OF_LIGHT

NM = 1e-9
GHZ = 1e9
PS = 1e-12
KM = 1e3

# ps/(nm^2 km) -> s/m^3
SLOPE_UNIT = PS / (NM * NM * KM)
# 1/(W km) -> 1/(W m)
GAMMA_UNIT = 1.0 / KM
# ps^2/km -> s^2/m
BETA2_UNIT = PS * PS / KM


def nm_to_m(value_nm: float) -> float:
    return value_nm * NM


def ghz_to_hz(value_ghz: float) -> float:
    return value_ghz * GHZ


def ghz_to_angular(value_ghz: ArrayLike) -> NDArray[np.float64]:
    """Detuning in GHz to angular frequency offset in rad/s."""
    return 2.0 * math.pi * np.asarray(value_ghz, dtype=float) * GHZ


def wavelength_nm_to_angular(lambda_nm: float) -> float:
    return 2.0 * math.pi * SPEED_OF_LIGHT / nm_to_m(lambda_nm)


def angular_to_wavelength_m(omega: float) -> float:
    return 2.0 * math.pi * SPEED_OF_LIGHT / omega


def slope_to_si(s_ps_nm2_km: float) -> float:
    return s_ps_nm2_km * SLOPE_UNIT


def gamma_to_si(gamma_per_w_km: float) -> float:
    return gamma_per_w_km * GAMMA_UNIT


def beta2_to_ps2_per_km(beta2_si: float) -> float:
    return beta2_si / BETA2_UNIT


def detuning_to_wavelength_offset_nm(delta_nu_ghz: float, lambda_p_nm: float) -> float:
    """Wavelength offset equivalent to a frequency detuning around the pump (first order)."""
    lam = nm_to_m(lambda_p_nm)
    return (lam * lam / SPEED_OF_LIGHT) * ghz_to_hz(delta_nu_ghz) / NM
