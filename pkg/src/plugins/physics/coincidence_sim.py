# -*- coding: utf-8 -*-
#  Copyleft 2026 fiberpairs contributors.
#  This file is part of fiberpairs.
#
#  fiberpairs is free software: you can redistribute it and/or modify it under the terms of the
#   GNU General Public License as published by the Free Software Foundation, either version 3
#   of the License or any later version.
#
#  fiberpairs is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY;
#   without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR
#   PURPOSE.  See the GNU General Public License for more details.

"""
Counting experiment: pulsed pump, pair and Raman-noise photons, DWDM channels,
gated detectors with dead time, TCSPC histogram and CAR.

Per gate, every photon source is an independent Bernoulli process in the gate
index: pairs with both photons detected, pairs with only the signal or only
the idler detected, noise photons in each channel, and dark clicks. This is
exact Poisson splitting followed by thinning with eta = transmittance x
efficiency, and only the gates where something fires are ever materialized.
Dead time blocks whole gates (non-paralyzable). expected_rates evaluates the
same model in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, NamedTuple, Sequence

import numpy as np
from numpy.typing import NDArray
from scipy import optimize

from config.models import ChannelSpec, DetectorSpec, ExperimentConfig, FiberSpec, PumpSpec
from core.concurrency import run_parallel, spawn_generators
from core.exceptions import CarUndefinedError, DomainError, EnergyConservationError, ModelError
from Singletons import Logger, Stack

from .pair_spectrum import mu_p, pgr

logger = Logger()

DWDM_GRID_GHZ = 100.0
DWDM_PASSBAND_GHZ = 75.0
DWDM_TRANSMITTANCE = 0.6
SATURATION_CPS = 10_000.0
MIN_SIDE_WINDOW_COUNTS = 10
# 3.8 m and 308 m reach about 3 kcps at 51 W*m and 230 W*m
RAMAN_ANCHORS_W_M: tuple[tuple[float, float], ...] = ((3.8, 51.0), (308.0, 230.0))
TARGET_SINGLES_CPS = 3000.0
POWER_SEARCH_W = (1e-3, 200.0)

_FWHM_TO_SIGMA = 1.0 / (2.0 * math.sqrt(2.0 * math.log(2.0)))


# --------------------------------------------------------------------- helpers


def detection_efficiency(channel: ChannelSpec, detector: DetectorSpec) -> float:
    """eta = channel transmittance x detector efficiency."""
    return channel.transmittance * detector.efficiency


def blocked_gates(detector: DetectorSpec, rep_rate_hz: float) -> int:
    """Gates after a click during which the detector stays blind."""
    return max(0, math.ceil(detector.dead_time_s * rep_rate_hz - 1e-9) - 1)


def dwdm_channel_pair(
    separation_ghz: float,
    *,
    bandwidth_ghz: float = DWDM_PASSBAND_GHZ,
    transmittance: float = DWDM_TRANSMITTANCE,
) -> tuple[ChannelSpec, ChannelSpec]:
    """Signal/idler channels mirrored about the pump on the 100-GHz DWDM grid."""
    steps = separation_ghz / DWDM_GRID_GHZ
    if separation_ghz <= 0 or abs(steps - round(steps)) > 1e-9:
        raise DomainError(f"channel separation must be a positive multiple of {DWDM_GRID_GHZ:g} GHz")
    signal = ChannelSpec(detuning_ghz=separation_ghz, bandwidth_ghz=bandwidth_ghz, transmittance=transmittance)
    idler = ChannelSpec(detuning_ghz=-separation_ghz, bandwidth_ghz=bandwidth_ghz, transmittance=transmittance)
    return signal, idler


def _check_energy_conservation(signal: ChannelSpec, idler: ChannelSpec) -> None:
    if abs(signal.detuning_ghz + idler.detuning_ghz) > 1e-9 or abs(signal.bandwidth_ghz - idler.bandwidth_ghz) > 1e-9:
        raise EnergyConservationError(
            f"energy-conservation mismatch: signal at {signal.detuning_ghz:+g} GHz and idler at "
            f"{idler.detuning_ghz:+g} GHz are not mirrored about the pump"
        )


def pairs_per_pulse(pump: PumpSpec, fiber: FiberSpec, channel: ChannelSpec) -> float:
    """Mean pairs per pulse collected in a channel pair of the given bandwidth."""
    return float(pgr(abs(channel.detuning_ghz), pump, fiber, channel.bandwidth_ghz)) / pump.rep_rate_hz


def noise_per_pulse(pump: PumpSpec, fiber: FiberSpec, channel: ChannelSpec, raman_coeff: float | None = None) -> float:
    """Mean Raman noise photons per pulse in one channel, before thinning."""
    coeff = fiber.raman_coeff if raman_coeff is None else raman_coeff
    return coeff * pump.peak_power_w * fiber.length_m * channel.bandwidth_ghz


def accidental_rate_from_singles(singles_s_cps: float, singles_i_cps: float, rep_rate_hz: float) -> float:
    """Accidentals per second for uncorrelated singles on a pulsed source."""
    return singles_s_cps * singles_i_cps / rep_rate_hz


# ---------------------------------------------------------------- closed form


@dataclass(frozen=True)
class RateReport:
    """Closed-form per-second rates for one configuration."""

    mu_p: float
    pairs_per_pulse: float
    noise_s_per_pulse: float
    noise_i_per_pulse: float
    eta_s: float
    eta_i: float
    click_prob_s: float
    click_prob_i: float
    joint_click_prob: float
    arming_s: float
    arming_i: float
    singles_s: float
    singles_i: float
    true_rate: float
    coincidence_rate: float
    accidental_rate: float

    @property
    def car(self) -> float:
        if self.accidental_rate <= 0.0:
            raise CarUndefinedError("CAR undefined: no accidentals expected")
        return self.coincidence_rate / self.accidental_rate

    def as_dict(self) -> dict[str, float]:
        return {name: float(getattr(self, name)) for name in self.__dataclass_fields__}


def expected_rates(
    pump: PumpSpec,
    fiber: FiberSpec,
    signal: ChannelSpec,
    idler: ChannelSpec,
    det_s: DetectorSpec,
    det_i: DetectorSpec,
    *,
    raman_coeff: float | None = None,
    saturation_cps: float = SATURATION_CPS,
    warn: bool = True,
) -> RateReport:
    """
    Per-gate click probabilities and the resulting rates.

    p_x = 1 - exp(-eta_x (mu + n_x)) (1 - d_x) is the click probability of an
    armed detector, P00 the probability that neither clicks, and
    p_si = p_s + p_i - 1 + P00 the joint probability. Dead time enters as the
    arming factor 1 / (1 + p m) with m blocked gates. The true rate is
    mu_p eta_s eta_i L^2 P^2.
    """
    _check_energy_conservation(signal, idler)
    f = pump.rep_rate_hz
    mu = pairs_per_pulse(pump, fiber, signal)
    n_s = noise_per_pulse(pump, fiber, signal, raman_coeff)
    n_i = noise_per_pulse(pump, fiber, idler, raman_coeff)
    eta_s = detection_efficiency(signal, det_s)
    eta_i = detection_efficiency(idler, det_i)
    d_s = det_s.dark_prob_per_gate
    d_i = det_i.dark_prob_per_gate

    p_s = 1.0 - math.exp(-eta_s * (mu + n_s)) * (1.0 - d_s)
    p_i = 1.0 - math.exp(-eta_i * (mu + n_i)) * (1.0 - d_i)
    p00 = math.exp(-mu * (eta_s + eta_i - eta_s * eta_i) - eta_s * n_s - eta_i * n_i) * (1.0 - d_s) * (1.0 - d_i)
    p_si = max(0.0, p_s + p_i - 1.0 + p00)

    arm_s = 1.0 / (1.0 + p_s * blocked_gates(det_s, f))
    arm_i = 1.0 / (1.0 + p_i * blocked_gates(det_i, f))
    mu_coeff = float(mu_p(abs(signal.detuning_ghz), pump, fiber, signal.bandwidth_ghz))

    report = RateReport(
        mu_p=mu_coeff,
        pairs_per_pulse=mu,
        noise_s_per_pulse=n_s,
        noise_i_per_pulse=n_i,
        eta_s=eta_s,
        eta_i=eta_i,
        click_prob_s=p_s,
        click_prob_i=p_i,
        joint_click_prob=p_si,
        arming_s=arm_s,
        arming_i=arm_i,
        singles_s=f * p_s * arm_s,
        singles_i=f * p_i * arm_i,
        true_rate=mu_coeff * eta_s * eta_i * fiber.length_m**2 * pump.peak_power_w**2,
        coincidence_rate=f * p_si * arm_s * arm_i,
        accidental_rate=f * p_s * p_i * arm_s * arm_i,
    )
    if warn:
        _saturation_guard(report.singles_s, report.singles_i, saturation_cps)
    return report


def expected_rates_for(config: ExperimentConfig, **kwargs: Any) -> RateReport:
    return expected_rates(
        config.pump, config.fiber, config.signal, config.idler, config.detector_s, config.detector_i, **kwargs
    )


def _saturation_guard(singles_s: float, singles_i: float, saturation_cps: float) -> None:
    worst = max(singles_s, singles_i)
    if worst > saturation_cps:
        logger.warning(f"Singles rate {worst:.0f} cps exceeds the detector saturation guard of {saturation_cps:.0f} cps")


# ---------------------------------------------------------------- calibration


class RamanCalibration(NamedTuple):
    coefficient: float
    # (length_m, power_w, modelled singles cps, relative residual)
    anchors: tuple[tuple[float, float, float, float], ...]


def _required_photons_per_pulse(target_cps: float, pump: PumpSpec, channel: ChannelSpec, detector: DetectorSpec) -> float:
    f = pump.rep_rate_hz
    m = blocked_gates(detector, f)
    denominator = f - target_cps * m
    if denominator <= 0 or target_cps >= f:
        raise ModelError(f"singles target {target_cps:g} cps is unreachable with this dead time")
    p = target_cps / denominator
    return -math.log1p(-p) / detection_efficiency(channel, detector)


def calibrate_raman_coeff(
    pump: PumpSpec,
    fiber: FiberSpec,
    signal: ChannelSpec,
    detector: DetectorSpec,
    *,
    anchors: Sequence[tuple[float, float]] = RAMAN_ANCHORS_W_M,
    target_cps: float = TARGET_SINGLES_CPS,
) -> RamanCalibration:
    """
    One noise coefficient for every (length, P x L) anchor at which the
    singles rate reached target_cps. Least squares on the photons per pulse
    a_j + k b_j = T, where a_j is the pair contribution and b_j = P L B.
    Dark clicks are ignored here.
    """
    required = _required_photons_per_pulse(target_cps, pump, signal, detector)
    rows: list[tuple[float, float, float, float]] = []
    for length_m, power_length in anchors:
        power = power_length / length_m
        p = pump.model_copy(update={"peak_power_w": power})
        fb = fiber.model_copy(update={"length_m": length_m})
        rows.append((length_m, power, pairs_per_pulse(p, fb, signal), power * length_m * signal.bandwidth_ghz))

    numerator = sum(b * (required - a) for _, _, a, b in rows)
    denominator = sum(b * b for _, _, _, b in rows)
    coeff = max(0.0, numerator / denominator)

    idler = signal.model_copy(update={"detuning_ghz": -signal.detuning_ghz})
    report_rows = []
    for length_m, power, _, _ in rows:
        p = pump.model_copy(update={"peak_power_w": power})
        fb = fiber.model_copy(update={"length_m": length_m, "raman_coeff": coeff})
        singles = expected_rates(p, fb, signal, idler, detector, detector, warn=False).singles_s
        report_rows.append((length_m, power, singles, singles / target_cps - 1.0))
    logger.info(f"Calibrated raman_coeff = {coeff:.4g} over {len(rows)} anchors")
    return RamanCalibration(coefficient=coeff, anchors=tuple(report_rows))


def power_for_singles(
    target_cps: float,
    pump: PumpSpec,
    fiber: FiberSpec,
    signal: ChannelSpec,
    idler: ChannelSpec,
    det_s: DetectorSpec,
    det_i: DetectorSpec,
) -> float:
    """Peak power at which the signal singles rate equals target_cps."""

    def excess(power: float) -> float:
        p = pump.model_copy(update={"peak_power_w": power})
        return expected_rates(p, fiber, signal, idler, det_s, det_i, warn=False).singles_s - target_cps

    lo, hi = POWER_SEARCH_W
    if excess(lo) > 0 or excess(hi) < 0:
        raise ModelError(f"no peak power in [{lo:g}, {hi:g}] W gives {target_cps:g} singles per second")
    return float(optimize.brentq(excess, lo, hi, xtol=1e-9, rtol=1e-10))


# ----------------------------------------------------------------- Monte Carlo


@dataclass(frozen=True)
class CoincidenceResult:
    """Outcome of one simulated accumulation."""

    histogram: NDArray[np.int64]
    bin_centers_s: NDArray[np.float64]
    singles_s: int
    singles_i: int
    c_c: int
    c_a: float
    side_window_counts: tuple[int, ...]
    duration_s: float
    seed: int
    rep_rate_hz: float
    window_s: float

    @property
    def singles_rate_s(self) -> float:
        return self.singles_s / self.duration_s

    @property
    def singles_rate_i(self) -> float:
        return self.singles_i / self.duration_s

    def summary(self) -> dict[str, float | int]:
        return {
            "singles_s": self.singles_s,
            "singles_i": self.singles_i,
            "c_c": self.c_c,
            "c_a": self.c_a,
            "duration_s": self.duration_s,
            "seed": self.seed,
            "side_window_counts": list(self.side_window_counts),
        }


@dataclass
class _Tally:
    histogram: NDArray[np.int64]
    singles_s: int = 0
    singles_i: int = 0
    c_c: int = 0
    side: NDArray[np.int64] = field(default_factory=lambda: np.zeros(0, dtype=np.int64))


@dataclass(frozen=True)
class _Plan:
    """Everything a segment needs, precomputed once."""

    # per-gate firing probabilities
    p_both: float
    p_s_only: float
    p_i_only: float
    p_noise_s: float
    p_noise_i: float
    p_dark_s: float
    p_dark_i: float
    blocked_s: int
    blocked_i: int
    gate_s: float
    gate_i: float
    sigma_s: float
    sigma_i: float
    period_s: float
    window_s: float
    side_windows: int
    edges_s: NDArray[np.float64]


def _poisson_fire(mean: float) -> float:
    return -math.expm1(-mean) if mean > 0 else 0.0


def _make_plan(
    pump: PumpSpec,
    fiber: FiberSpec,
    signal: ChannelSpec,
    idler: ChannelSpec,
    det_s: DetectorSpec,
    det_i: DetectorSpec,
    window_s: float,
    bin_width_s: float,
    side_windows: int,
) -> _Plan:
    mu = pairs_per_pulse(pump, fiber, signal)
    eta_s = detection_efficiency(signal, det_s)
    eta_i = detection_efficiency(idler, det_i)
    period = 1.0 / pump.rep_rate_hz
    half_span = (side_windows + 0.5) * period
    n_half = math.ceil(half_span / bin_width_s - 0.5)
    edges = (np.arange(-n_half, n_half + 2, dtype=float) - 0.5) * bin_width_s
    return _Plan(
        p_both=_poisson_fire(mu * eta_s * eta_i),
        p_s_only=_poisson_fire(mu * eta_s * (1.0 - eta_i)),
        p_i_only=_poisson_fire(mu * eta_i * (1.0 - eta_s)),
        p_noise_s=_poisson_fire(eta_s * noise_per_pulse(pump, fiber, signal)),
        p_noise_i=_poisson_fire(eta_i * noise_per_pulse(pump, fiber, idler)),
        p_dark_s=det_s.dark_prob_per_gate,
        p_dark_i=det_i.dark_prob_per_gate,
        blocked_s=blocked_gates(det_s, pump.rep_rate_hz),
        blocked_i=blocked_gates(det_i, pump.rep_rate_hz),
        gate_s=det_s.gate_width_s,
        gate_i=det_i.gate_width_s,
        sigma_s=det_s.jitter_fwhm_s * _FWHM_TO_SIGMA,
        sigma_i=det_i.jitter_fwhm_s * _FWHM_TO_SIGMA,
        period_s=period,
        window_s=window_s,
        side_windows=side_windows,
        edges_s=edges,
    )


def _bernoulli_gates(rng: np.random.Generator, p: float, n_gates: int) -> NDArray[np.int64]:
    """Sorted indices of the gates in [0, n_gates) where a p-Bernoulli source fires."""
    if p <= 0.0 or n_gates <= 0:
        return np.empty(0, dtype=np.int64)
    if p >= 1.0:
        return np.arange(n_gates, dtype=np.int64)
    chunks: list[NDArray[np.int64]] = []
    position = -1
    expected = n_gates * p
    while position < n_gates - 1:
        size = int(expected + 5.0 * math.sqrt(expected) + 16)
        gaps = rng.geometric(p, size=size).astype(np.int64)
        steps = position + np.cumsum(gaps)
        chunks.append(steps)
        position = int(steps[-1])
    gates = np.concatenate(chunks)
    return gates[gates < n_gates]


def _apply_dead_time(gates: NDArray[np.int64], blocked: int) -> NDArray[np.bool_]:
    """Non-paralyzable dead time on sorted unique gate indices."""
    keep = np.ones(gates.size, dtype=bool)
    if blocked <= 0 or gates.size < 2:
        return keep
    close = np.flatnonzero(np.diff(gates) <= blocked) + 1
    last_accepted = 0
    previous = -2
    for idx in close.tolist():
        if idx - 1 != previous:
            last_accepted = int(gates[idx - 1])
        gate = int(gates[idx])
        if gate - last_accepted <= blocked:
            keep[idx] = False
        else:
            last_accepted = gate
        previous = idx
    return keep


def _detector_clicks(
    rng: np.random.Generator,
    photon_gates: Sequence[NDArray[np.int64]],
    dark_gates: NDArray[np.int64],
    gate_width: float,
    sigma: float,
    blocked: int,
) -> tuple[NDArray[np.int64], NDArray[np.float64]]:
    """Clicks as (gate index, arrival offset from the pulse) after gating and dead time."""
    photons = np.unique(np.concatenate(photon_gates)) if photon_gates else np.empty(0, dtype=np.int64)
    offsets = rng.normal(0.0, sigma, size=photons.size) if sigma > 0 else np.zeros(photons.size)
    if gate_width > 0:
        inside = np.abs(offsets) <= gate_width / 2.0
        photons, offsets = photons[inside], offsets[inside]

    dark_only = np.setdiff1d(dark_gates, photons, assume_unique=False)
    dark_offsets = rng.uniform(-gate_width / 2.0, gate_width / 2.0, size=dark_only.size)

    gates = np.concatenate([photons, dark_only])
    times = np.concatenate([offsets, dark_offsets])
    order = np.argsort(gates, kind="stable")
    gates, times = gates[order], times[order]

    keep = _apply_dead_time(gates, blocked)
    return gates[keep], times[keep]


def _simulate_segment(plan: _Plan, n_gates: int, rng: np.random.Generator) -> _Tally:
    both = _bernoulli_gates(rng, plan.p_both, n_gates)
    s_only = _bernoulli_gates(rng, plan.p_s_only, n_gates)
    i_only = _bernoulli_gates(rng, plan.p_i_only, n_gates)
    noise_s = _bernoulli_gates(rng, plan.p_noise_s, n_gates)
    noise_i = _bernoulli_gates(rng, plan.p_noise_i, n_gates)
    dark_s = _bernoulli_gates(rng, plan.p_dark_s, n_gates)
    dark_i = _bernoulli_gates(rng, plan.p_dark_i, n_gates)

    gates_s, t_s = _detector_clicks(rng, [both, s_only, noise_s], dark_s, plan.gate_s, plan.sigma_s, plan.blocked_s)
    gates_i, t_i = _detector_clicks(rng, [both, i_only, noise_i], dark_i, plan.gate_i, plan.sigma_i, plan.blocked_i)

    delays: list[NDArray[np.float64]] = []
    k_max = plan.side_windows
    if gates_i.size:
        for k in range(-k_max, k_max + 1):
            target = gates_s - k
            pos = np.searchsorted(gates_i, target)
            pos_clipped = np.minimum(pos, gates_i.size - 1)
            hit = gates_i[pos_clipped] == target
            delays.append(k * plan.period_s + t_s[hit] - t_i[pos_clipped[hit]])
    delay = np.concatenate(delays) if delays else np.empty(0)

    histogram, _ = np.histogram(delay, bins=plan.edges_s)
    half = plan.window_s / 2.0
    c_c = int(np.count_nonzero(np.abs(delay) <= half))
    side = np.array(
        [np.count_nonzero(np.abs(delay - sign * k * plan.period_s) <= half) for k in range(1, k_max + 1) for sign in (-1, 1)],
        dtype=np.int64,
    )
    return _Tally(
        histogram=histogram.astype(np.int64),
        singles_s=int(gates_s.size),
        singles_i=int(gates_i.size),
        c_c=c_c,
        side=side,
    )


def simulate(
    pump: PumpSpec,
    fiber: FiberSpec,
    channels: tuple[ChannelSpec, ChannelSpec],
    detectors: tuple[DetectorSpec, DetectorSpec],
    duration_s: float,
    seed: int,
    *,
    window_s: float = 3e-9,
    bin_width_s: float = 176e-12,
    side_windows: int = 2,
    segment_s: float = 1.0,
    workers: int = 1,
    saturation_cps: float = SATURATION_CPS,
) -> CoincidenceResult:
    """
    Monte Carlo accumulation of duration_s seconds.

    The run is cut into segments of segment_s, each with its own substream
    of the master seed; tallies are summed in segment order, so the result
    is identical for any worker count. Dead-time state and coincidences
    straddling a segment boundary are dropped.
    """
    if not duration_s > 0:
        raise DomainError("duration_s must be positive")
    if side_windows < 1:
        raise DomainError(f"side_windows must be at least 1 to estimate accidentals, got {side_windows}")
    signal, idler = channels
    det_s, det_i = detectors
    _check_energy_conservation(signal, idler)
    plan = _make_plan(pump, fiber, signal, idler, det_s, det_i, window_s, bin_width_s, side_windows)

    total_gates = int(round(duration_s * pump.rep_rate_hz))
    per_segment = max(1, int(round(segment_s * pump.rep_rate_hz)))
    sizes = [min(per_segment, total_gates - start) for start in range(0, total_gates, per_segment)] or [0]
    generators = spawn_generators(seed, len(sizes))
    logger.debug(f"Simulating {total_gates} gates in {len(sizes)} segments (seed={seed})")

    tallies = run_parallel(
        lambda job: _simulate_segment(plan, job[0], job[1]),
        list(zip(sizes, generators)),
        max_workers=workers,
    )

    histogram = np.zeros(plan.edges_s.size - 1, dtype=np.int64)
    side = np.zeros(2 * side_windows, dtype=np.int64)
    singles_s = singles_i = c_c = 0
    for tally in tallies:
        histogram += tally.histogram
        if tally.side.size:
            side += tally.side
        singles_s += tally.singles_s
        singles_i += tally.singles_i
        c_c += tally.c_c

    stack = Stack()
    stack.add_counter("pulses_simulated", total_gates)
    stack.add_counter("clicks_signal", singles_s)
    stack.add_counter("clicks_idler", singles_i)

    if side.min() < MIN_SIDE_WINDOW_COUNTS:
        logger.warning(
            f"Accidental windows hold only {int(side.min())} counts; C_a is statistically poor (seed={seed})"
        )
    _saturation_guard(singles_s / duration_s, singles_i / duration_s, saturation_cps)

    centers = 0.5 * (plan.edges_s[:-1] + plan.edges_s[1:])
    return CoincidenceResult(
        histogram=histogram,
        bin_centers_s=centers,
        singles_s=singles_s,
        singles_i=singles_i,
        c_c=c_c,
        c_a=float(side.mean()),
        side_window_counts=tuple(int(v) for v in side),
        duration_s=float(duration_s),
        seed=int(seed),
        rep_rate_hz=pump.rep_rate_hz,
        window_s=window_s,
    )


def simulate_config(config: ExperimentConfig, *, workers: int | None = None) -> CoincidenceResult:
    run = config.run
    return simulate(
        config.pump,
        config.fiber,
        config.channels,
        config.detectors,
        run.duration_s,
        run.seed,
        window_s=run.coincidence_window_s,
        bin_width_s=run.bin_width_s,
        side_windows=run.side_windows,
        segment_s=run.segment_s,
        workers=workers or run.workers,
        saturation_cps=run.saturation_cps,
    )


# ------------------------------------------------------------------- metrics


def car(result: CoincidenceResult) -> float:
    """Coincidence-to-accidental ratio C_c / C_a."""
    if result.c_a <= 0:
        raise CarUndefinedError("CAR undefined: no accidentals recorded")
    return result.c_c / result.c_a


class TrueCoincidences(NamedTuple):
    counts: float
    clipped: bool


def true_coincidences(result: CoincidenceResult) -> TrueCoincidences:
    """C_c - C_a, floored at zero; clipped is set when the difference was negative."""
    net = result.c_c - result.c_a
    return TrueCoincidences(counts=max(0.0, float(net)), clipped=net < 0)


def shot_noise(counts: float) -> float:
    """Poisson standard error of a count."""
    return math.sqrt(max(0.0, counts))
