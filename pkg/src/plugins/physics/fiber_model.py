# -*- coding: utf-8 -*-
#  Copyleft 2026 fiberpairs contributors.
#  This file is part of fiberpairs. Licensed under GPLv3+.

"""
Chromatic dispersion and Taylor coefficients of the fiber propagation constant.

D(lambda) follows the datasheet slope form D = (S0/4)(lambda - lambda0^4/lambda^3),
so D(lambda0) = 0 by construction. Public functions take conventional units
(nm, ps/nm/km) and return either conventional units (D, S) or SI (beta_n).
"""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import integrate

from config.models import FiberSpec
from core.enums import BetaMethod
from core.exceptions import DomainError
from core.units import (
    SPEED_OF_LIGHT,
    angular_to_wavelength_m,
    nm_to_m,
    slope_to_si,
    wavelength_nm_to_angular,
)

WINDOW_NM = (1000.0, 2000.0)
# centered-difference step on beta2(omega)
FD_STEP_RAD_S = 2.0 * math.pi * 1e12

_TWO_PI_C = 2.0 * math.pi * SPEED_OF_LIGHT


def _check_window(lambda_nm: ArrayLike) -> None:
    values = np.asarray(lambda_nm, dtype=float)
    lo, hi = WINDOW_NM
    if np.any(values < lo) or np.any(values > hi) or np.any(~np.isfinite(values)):
        raise DomainError(f"wavelength outside the dispersion model window [{lo:g}, {hi:g}] nm")


def dispersion_D(lambda_nm: float, fiber: FiberSpec) -> float:
    """Dispersion parameter in ps/(nm km)."""
    _check_window(lambda_nm)
    lam0 = fiber.lambda_zgvd_nm
    return fiber.slope_s0 / 4.0 * (lambda_nm - lam0**4 / lambda_nm**3)


def dispersion_slope(lambda_nm: float, fiber: FiberSpec) -> float:
    """dD/dlambda in ps/(nm^2 km)."""
    _check_window(lambda_nm)
    lam0 = fiber.lambda_zgvd_nm
    return fiber.slope_s0 / 4.0 * (1.0 + 3.0 * lam0**4 / lambda_nm**4)


def dispersion_curve(wavelengths_nm: ArrayLike, fiber: FiberSpec) -> NDArray[np.float64]:
    lam = np.asarray(wavelengths_nm, dtype=float)
    _check_window(lam)
    lam0 = fiber.lambda_zgvd_nm
    return fiber.slope_s0 / 4.0 * (lam - lam0**4 / lam**3)


def _d_si(lam_m: float, fiber: FiberSpec) -> tuple[float, float, float]:
    """D, dD/dlambda and d2D/dlambda2 in SI at a wavelength given in meters."""
    s0 = slope_to_si(fiber.slope_s0)
    lam0 = nm_to_m(fiber.lambda_zgvd_nm)
    d = s0 / 4.0 * (lam_m - lam0**4 / lam_m**3)
    s = s0 / 4.0 * (1.0 + 3.0 * lam0**4 / lam_m**4)
    ds = -3.0 * s0 * lam0**4 / lam_m**5
    return d, s, ds


def beta2_at_omega(omega: float, fiber: FiberSpec) -> float:
    """beta2 in s^2/m at an absolute angular frequency."""
    lam = angular_to_wavelength_m(omega)
    _check_window(lam / 1e-9)
    d, _, _ = _d_si(lam, fiber)
    return -d * lam * lam / _TWO_PI_C


def beta_n(
    lambda_p_nm: float,
    n: int,
    fiber: FiberSpec,
    method: BetaMethod = BetaMethod.ANALYTIC,
) -> float:
    """
    n-th Taylor coefficient of k(omega) at the pump, in s^n/m.

    beta3 and beta4 come from differentiating beta2(omega) with respect to
    omega, either in closed form or by centered differences with step
    FD_STEP_RAD_S.
    """
    if n not in (2, 3, 4):
        raise DomainError(f"unsupported Taylor order n={n}; expected 2, 3 or 4")
    _check_window(lambda_p_nm)

    if method == BetaMethod.FINITE_DIFFERENCE and n > 2:
        omega = wavelength_nm_to_angular(lambda_p_nm)
        h = FD_STEP_RAD_S
        up, mid, down = (beta2_at_omega(omega + h, fiber), beta2_at_omega(omega, fiber), beta2_at_omega(omega - h, fiber))
        if n == 3:
            return (up - down) / (2.0 * h)
        return (up - 2.0 * mid + down) / (h * h)

    lam = nm_to_m(lambda_p_nm)
    d, s, ds = _d_si(lam, fiber)
    a = _TWO_PI_C
    if n == 2:
        return -d * lam * lam / a
    if n == 3:
        return (s * lam**4 + 2.0 * d * lam**3) / a**2
    return -(lam**2) * (ds * lam**4 + 6.0 * s * lam**3 + 6.0 * d * lam**2) / a**3


def group_delay_offset(lambda_nm: float, lambda_ref_nm: float, fiber: FiberSpec) -> float:
    """
    beta1(lambda) - beta1(lambda_ref) in s/m.

    Closed-form integral of D over wavelength, since dbeta1/dlambda = D.
    """
    s0 = slope_to_si(fiber.slope_s0)
    lam0 = nm_to_m(fiber.lambda_zgvd_nm)

    def antiderivative(lam_m: float) -> float:
        return s0 / 4.0 * (lam_m * lam_m / 2.0 + lam0**4 / (2.0 * lam_m * lam_m))

    return antiderivative(nm_to_m(lambda_nm)) - antiderivative(nm_to_m(lambda_ref_nm))


def k_mismatch_exact(omega_offset: float, lambda_p_nm: float, fiber: FiberSpec) -> float:
    """
    2k(wp) - k(wp + W) - k(wp - W) in 1/m, from k(omega) built by integrating
    beta1(omega) numerically. The beta0 and beta1 terms cancel exactly.
    """
    if omega_offset == 0.0:
        return 0.0
    omega_p = wavelength_nm_to_angular(lambda_p_nm)
    lam_p_nm = lambda_p_nm

    def excess_delay(omega: float) -> float:
        lam_nm = angular_to_wavelength_m(omega) / 1e-9
        return group_delay_offset(lam_nm, lam_p_nm, fiber)

    def integral_to(omega_end: float) -> float:
        span = omega_end - omega_p
        value, _ = integrate.quad(lambda t: excess_delay(omega_p + span * t), 0.0, 1.0, epsabs=0.0, epsrel=1e-11, limit=200)
        return span * value

    _check_window(angular_to_wavelength_m(omega_p + omega_offset) / 1e-9)
    _check_window(angular_to_wavelength_m(omega_p - omega_offset) / 1e-9)
    return -(integral_to(omega_p + omega_offset) + integral_to(omega_p - omega_offset))


def beta2_from_exact_k(lambda_p_nm: float, fiber: FiberSpec, step: float = FD_STEP_RAD_S) -> float:
    """Second centered difference of the integrated k(omega), as a cross-check of beta_n(n=2)."""
    return -k_mismatch_exact(step, lambda_p_nm, fiber) / (step * step)
