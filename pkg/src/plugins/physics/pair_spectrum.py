# -*- coding: utf-8 -*-
#  Copyleft 2026 fiberpairs contributors.
#  This file is part of fiberpairs. Licensed under GPLv3+.

"""
Pair-generation coefficient

    mu_p(nu) = tau_p f_p B gamma^2 sinc^2(Delta k(nu) L / 2)

in pairs / (W^2 m^2 s), with the unnormalized sinc(x) = sin(x)/x, and the
pair-generation rate PGR = mu_p P^2 L^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import optimize

from config.models import FiberSpec, PumpSpec
from core.enums import DeltaKMode, HwhmReference
from core.exceptions import DomainError, WindowTooNarrowError
from core.units import gamma_to_si, ghz_to_hz

from .phase_matching import WINDOW_GHZ, DetuningGrid, delta_k, phase_matched_detuning


def sinc2(x: ArrayLike) -> NDArray[np.float64] | float:
    """sin(x)^2 / x^2 with sinc2(0) = 1."""
    value = np.sinc(np.asarray(x, dtype=float) / np.pi) ** 2
    return float(value) if np.ndim(value) == 0 else value


@cache
def half_max_abscissa() -> float:
    """x > 0 where sinc^2(x) = 1/2 (about 1.3916)."""
    return float(optimize.brentq(lambda x: float(sinc2(x)) - 0.5, 1.0, 2.0, xtol=1e-14))


def mu_p_peak(pump: PumpSpec, fiber: FiberSpec, filter_bw_ghz: float) -> float:
    """Upper bound tau_p f_p B gamma^2 reached where Delta k = 0."""
    if not filter_bw_ghz > 0:
        raise DomainError("filter bandwidth must be positive")
    gamma = gamma_to_si(fiber.gamma_per_w_km)
    return pump.pulse_duration_s * pump.rep_rate_hz * ghz_to_hz(filter_bw_ghz) * gamma * gamma


def mu_p(
    delta_nu_ghz: ArrayLike,
    pump: PumpSpec,
    fiber: FiberSpec,
    filter_bw_ghz: float,
    *,
    mode: DeltaKMode = DeltaKMode.TRUNCATED,
) -> float | NDArray[np.float64]:
    peak = mu_p_peak(pump, fiber, filter_bw_ghz)
    dk = delta_k(delta_nu_ghz, pump, fiber, mode=mode)
    return peak * sinc2(np.asarray(dk) * fiber.length_m / 2.0)


def pgr(
    delta_nu_ghz: ArrayLike,
    pump: PumpSpec,
    fiber: FiberSpec,
    filter_bw_ghz: float,
) -> float | NDArray[np.float64]:
    """Pairs per second, mu_p P^2 L^2."""
    return mu_p(delta_nu_ghz, pump, fiber, filter_bw_ghz) * pump.peak_power_w**2 * fiber.length_m**2


def _outer_edge(pump: PumpSpec, fiber: FiberSpec, start_ghz: float) -> float:
    target = 2.0 * half_max_abscissa() / fiber.length_m

    def excess(nu: float) -> float:
        return float(delta_k(nu, pump, fiber)) - target

    if excess(WINDOW_GHZ) < 0.0:
        raise WindowTooNarrowError(
            f"window too narrow: mu_p spectrum of a {fiber.length_m:g} m fiber does not fall to half maximum "
            f"within {WINDOW_GHZ:g} GHz"
        )
    return float(optimize.brentq(excess, start_ghz, WINDOW_GHZ, xtol=1e-6))


def hwhm_bandwidth(
    pump: PumpSpec,
    fiber: FiberSpec,
    *,
    reference: HwhmReference = HwhmReference.FROM_PUMP,
) -> float:
    """
    Half width at half maximum of mu_p(nu) in GHz.

    The maximum sits at the phase-matched detuning, where sinc^2 = 1. Delta k
    grows monotonically with |nu| in the anomalous regime, so the outer
    half-maximum point is the single root of Delta k L / 2 = x_half past it.

    FROM_PUMP returns that outer point. FROM_PEAK returns half the width of
    the main lobe; if the spectrum stays above half maximum down to zero
    detuning the lobe is centered on the pump and both readings coincide.
    """
    peak_ghz = phase_matched_detuning(pump, fiber)
    outer = _outer_edge(pump, fiber, peak_ghz)
    if reference == HwhmReference.FROM_PUMP:
        return outer

    inner_target = -2.0 * half_max_abscissa() / fiber.length_m
    if float(delta_k(0.0, pump, fiber)) >= inner_target:
        return outer
    inner = float(
        optimize.brentq(lambda nu: float(delta_k(nu, pump, fiber)) - inner_target, 0.0, peak_ghz, xtol=1e-6)
    )
    return (outer - inner) / 2.0


@dataclass(frozen=True)
class PairSpectrum:
    """Sampled mu_p(nu) for one pump, fiber and filter bandwidth."""

    detuning_ghz: NDArray[np.float64]
    mu_p: NDArray[np.float64]
    pump: PumpSpec
    fiber: FiberSpec
    filter_bw_ghz: float

    @property
    def peak_limit(self) -> float:
        return mu_p_peak(self.pump, self.fiber, self.filter_bw_ghz)

    def normalized(self) -> NDArray[np.float64]:
        return self.mu_p / self.peak_limit

    def local_maxima(self) -> NDArray[np.float64]:
        """Detunings of interior samples that exceed both neighbours."""
        values = self.mu_p
        if values.size < 3:
            return np.empty(0)
        inner = (values[1:-1] > values[:-2]) & (values[1:-1] >= values[2:])
        return self.detuning_ghz[1:-1][inner]


def spectrum_sweep(
    grid: DetuningGrid | Sequence[float] | NDArray[np.float64],
    pump: PumpSpec,
    fiber: FiberSpec,
    filter_bw_ghz: float,
) -> PairSpectrum:
    """Pointwise mu_p over a detuning grid or an explicit list of detunings."""
    nu = grid.points if isinstance(grid, DetuningGrid) else np.atleast_1d(np.asarray(grid, dtype=float))
    values = np.atleast_1d(np.asarray(mu_p(nu, pump, fiber, filter_bw_ghz), dtype=float))
    return PairSpectrum(detuning_ghz=nu, mu_p=values, pump=pump, fiber=fiber, filter_bw_ghz=filter_bw_ghz)
