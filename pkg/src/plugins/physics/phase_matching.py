# -*- coding: utf-8 -*-
#  Copyleft 2026 fiberpairs contributors.
#  This file is part of fiberpairs. Licensed under GPLv3+.

"""Wavevector mismatch and the phase-matched detuning."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import optimize

from config.models import FiberSpec, PumpSpec
from core.enums import DeltaKMode
from core.exceptions import DomainError, PhaseMatchingError
from core.units import gamma_to_si, ghz_to_angular

from .fiber_model import beta_n, k_mismatch_exact

WINDOW_GHZ = 5000.0
ROOT_BRACKET_GHZ = (0.01, WINDOW_GHZ)
ROOT_XTOL_GHZ = 1e-4


@dataclass(frozen=True)
class DetuningGrid:
    """Evenly spaced detunings from the pump, in GHz."""

    start_ghz: float
    stop_ghz: float
    step_ghz: float

    def __post_init__(self) -> None:
        if not self.step_ghz > 0:
            raise DomainError("detuning grid step must be positive")
        if not self.start_ghz < self.stop_ghz:
            raise DomainError("detuning grid needs start < stop")

    @property
    def points(self) -> NDArray[np.float64]:
        count = int(np.floor((self.stop_ghz - self.start_ghz) / self.step_ghz + 1e-9)) + 1
        return self.start_ghz + self.step_ghz * np.arange(max(count, 2), dtype=float)


def spm_term(pump: PumpSpec, fiber: FiberSpec) -> float:
    """2 gamma P in 1/m."""
    return 2.0 * gamma_to_si(fiber.gamma_per_w_km) * pump.peak_power_w


def delta_k(
    delta_nu_ghz: ArrayLike,
    pump: PumpSpec,
    fiber: FiberSpec,
    *,
    include_spm: bool = True,
    mode: DeltaKMode = DeltaKMode.TRUNCATED,
) -> float | NDArray[np.float64]:
    """
    Delta k(nu) = 2k(wp) - k(wp + 2 pi nu) - k(wp - 2 pi nu) - 2 gamma P, in 1/m.

    Truncated mode keeps the even orders beta2 and beta4. Evaluated on |nu|,
    so the result is exactly even in the detuning.
    """
    nu = np.abs(np.asarray(delta_nu_ghz, dtype=float))
    if np.any(nu > WINDOW_GHZ):
        raise DomainError(f"detuning outside the model window |nu| <= {WINDOW_GHZ:g} GHz")
    omega = ghz_to_angular(nu)

    if mode == DeltaKMode.EXACT:
        linear = np.vectorize(lambda w: k_mismatch_exact(float(w), pump.lambda_p_nm, fiber))(omega)
    else:
        b2 = beta_n(pump.lambda_p_nm, 2, fiber)
        b4 = beta_n(pump.lambda_p_nm, 4, fiber)
        linear = -b2 * omega**2 - (b4 / 12.0) * omega**4

    result = linear - spm_term(pump, fiber) if include_spm else linear
    if np.ndim(result) == 0:
        return float(result)
    return np.asarray(result, dtype=float)


def delta_k_curve(
    grid: DetuningGrid,
    pump: PumpSpec,
    fiber: FiberSpec,
    *,
    include_spm: bool = True,
    mode: DeltaKMode = DeltaKMode.TRUNCATED,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    nu = grid.points
    return nu, np.atleast_1d(delta_k(nu, pump, fiber, include_spm=include_spm, mode=mode))


def phase_matched_detuning(
    pump: PumpSpec,
    fiber: FiberSpec,
    *,
    mode: DeltaKMode = DeltaKMode.TRUNCATED,
) -> float:
    """Positive root of Delta k(nu) = 0 in GHz."""
    if beta_n(pump.lambda_p_nm, 2, fiber) >= 0.0:
        raise PhaseMatchingError(
            f"no fundamental-mode phase matching: pump at {pump.lambda_p_nm:g} nm is in the normal-dispersion region"
        )

    def mismatch(nu: float) -> float:
        return float(delta_k(nu, pump, fiber, mode=mode))

    lo, hi = ROOT_BRACKET_GHZ
    if mismatch(lo) >= 0.0:
        # root below the bracket resolution; vanishes with pump power
        return 0.0
    if mismatch(hi) <= 0.0:
        raise PhaseMatchingError(f"no phase-matched detuning below {hi:g} GHz")
    return float(optimize.brentq(mismatch, lo, hi, xtol=ROOT_XTOL_GHZ))
