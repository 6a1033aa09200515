# -*- coding: utf-8 -*-
#  Copyleft 2026 fiberpairs contributors.
#  This file is part of fiberpairs. Licensed under GPLv3+.

"""
Polarization-entangled pairs |HH> +/- |VV> with visibility V: polarizer
fringes, visibility fits and the CHSH parameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Mapping, NamedTuple, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field

from core.concurrency import spawn_generators
from core.exceptions import DomainError, EntanglementError
from Singletons import Logger

logger = Logger()

SIGNAL_ANGLES_DEG: tuple[float, ...] = (-45.0, 0.0, 45.0, 90.0)
IDLER_ANGLES_DEG: tuple[float, ...] = (-22.5, 22.5, 67.5, 112.5)
FRINGE_STEP_DEG = 2.5
MIN_FRINGE_POINTS = 8
MIN_FRINGE_SPAN_DEG = 180.0
TWO_SQRT2 = 2.0 * math.sqrt(2.0)


class EntangledSourceSpec(BaseModel):
    """Pair source seen through two polarizers during one accumulation period."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    visibility: float = Field(ge=0, le=1)
    phase_sign: Literal[1, -1] = 1
    # coincidences per period for aligned polarizers and V = 1
    rate_scale: float = Field(gt=0)
    accidental_floor: float = Field(default=0.0, ge=0)


@dataclass(frozen=True)
class FringeScan:
    theta1_deg: float
    theta2_deg: NDArray[np.float64]
    counts: NDArray[np.int64]
    duration_s: float = 600.0


class VisibilityFit(NamedTuple):
    visibility: float
    phase_deg: float
    amplitude: float
    degenerate: bool


@dataclass(frozen=True)
class ChshResult:
    s_value: float
    s_error: float
    # keyed by (signal setting, idler setting) in degrees
    correlations: dict[tuple[float, float], float]


def coincidence_probability(theta1_deg: ArrayLike, theta2_deg: ArrayLike, source: EntangledSourceSpec) -> NDArray[np.float64] | float:
    """Fraction of pairs passing both polarizers: (1 + V cos 2(t1 -/+ t2)) / 4."""
    t1 = np.radians(np.asarray(theta1_deg, dtype=float))
    t2 = np.radians(np.asarray(theta2_deg, dtype=float))
    relative = t1 - t2 if source.phase_sign == 1 else t1 + t2
    value = (1.0 + source.visibility * np.cos(2.0 * relative)) / 4.0
    return float(value) if np.ndim(value) == 0 else value


def expected_fringe_counts(theta1_deg: float, theta2_deg: ArrayLike, source: EntangledSourceSpec) -> NDArray[np.float64]:
    probability = np.asarray(coincidence_probability(theta1_deg, theta2_deg, source), dtype=float)
    return source.rate_scale * 2.0 * probability + source.accidental_floor


def generate_fringe(
    theta1_deg: float,
    theta2_grid: ArrayLike,
    source: EntangledSourceSpec,
    seed: int,
    *,
    duration_s: float = 600.0,
) -> FringeScan:
    """Poisson counts per idler angle, each point drawn from its own substream."""
    theta2 = np.atleast_1d(np.asarray(theta2_grid, dtype=float))
    means = np.atleast_1d(expected_fringe_counts(theta1_deg, theta2, source))
    generators = spawn_generators(seed, theta2.size)
    counts = np.array([rng.poisson(mean) for rng, mean in zip(generators, means)], dtype=np.int64)
    return FringeScan(theta1_deg=float(theta1_deg), theta2_deg=theta2, counts=counts, duration_s=duration_s)


def fringe_grid(step_deg: float = FRINGE_STEP_DEG) -> NDArray[np.float64]:
    """Idler angles from -180 to 180 degrees inclusive."""
    count = int(round(360.0 / step_deg)) + 1
    return np.linspace(-180.0, 180.0, count)


def standard_fringe_set(source: EntangledSourceSpec, seed: int, *, step_deg: float = FRINGE_STEP_DEG) -> list[FringeScan]:
    """One fringe per signal setting, all on the same idler grid."""
    grid = fringe_grid(step_deg)
    seeds = np.random.SeedSequence(seed).spawn(len(SIGNAL_ANGLES_DEG))
    return [
        generate_fringe(theta1, grid, source, int(child.generate_state(1, dtype=np.uint32)[0]))
        for theta1, child in zip(SIGNAL_ANGLES_DEG, seeds)
    ]


def fit_visibility(scan: FringeScan, *, subtract_floor: float = 0.0) -> VisibilityFit:
    """
    Linear least squares of counts = A + a cos 2t + b sin 2t, then
    V = sqrt(a^2 + b^2) / A and phi = atan2(b, a) / 2, which is the model
    A (1 + V cos 2(t - phi)).
    """
    theta = np.asarray(scan.theta2_deg, dtype=float)
    if theta.size < MIN_FRINGE_POINTS:
        raise EntanglementError(f"fringe needs at least {MIN_FRINGE_POINTS} points, got {theta.size}")
    if np.ptp(theta) < MIN_FRINGE_SPAN_DEG:
        raise EntanglementError(f"fringe must span at least {MIN_FRINGE_SPAN_DEG:g} degrees")

    counts = np.asarray(scan.counts, dtype=float) - subtract_floor
    two_t = np.radians(2.0 * theta)
    design = np.column_stack([np.ones_like(two_t), np.cos(two_t), np.sin(two_t)])
    (offset, a, b), *_ = np.linalg.lstsq(design, counts, rcond=None)

    modulation = math.hypot(a, b)
    if offset <= 0.0 or modulation <= 1e-12 * max(abs(offset), 1.0):
        logger.warning(f"Degenerate fringe at theta1={scan.theta1_deg:g} deg; visibility set to 0")
        return VisibilityFit(visibility=0.0, phase_deg=0.0, amplitude=float(max(offset, 0.0)), degenerate=True)

    visibility = min(1.0, modulation / offset)
    phase = math.degrees(math.atan2(b, a)) / 2.0
    return VisibilityFit(visibility=visibility, phase_deg=phase, amplitude=float(offset), degenerate=False)


def s_from_visibility(visibility: float) -> float:
    """CHSH S for ideal settings, 2 sqrt(2) V."""
    if not 0.0 <= visibility <= 1.0:
        raise DomainError("visibility must lie in [0, 1]")
    return TWO_SQRT2 * visibility


def chsh_from_visibilities(visibilities: Sequence[float]) -> tuple[float, float]:
    """S from the mean fringe visibility, with the standard error of that mean."""
    values = np.asarray(visibilities, dtype=float)
    if values.size < 2:
        raise EntanglementError("need at least two visibilities for an error estimate")
    s_value = s_from_visibility(float(values.mean()))
    s_error = TWO_SQRT2 * float(values.std(ddof=1)) / math.sqrt(values.size)
    return s_value, s_error


def _angle_key(theta_deg: float) -> float:
    """Polarizer angles are defined modulo 180 degrees."""
    return round(((theta_deg + 90.0) % 180.0) - 90.0, 6)


def _settings(phase_sign: int) -> tuple[tuple[float, float], tuple[float, float]]:
    # (a, a'), (b, b'); the idler pair mirrors for |HH> - |VV>
    if phase_sign == 1:
        return (-45.0, 0.0), (-22.5, 22.5)
    return (-45.0, 0.0), (22.5, -22.5)


def chsh_from_counts(counts_16: Mapping[tuple[float, float], float], *, phase_sign: int = 1) -> ChshResult:
    """
    CHSH S from coincidences at the 16 polarizer settings.

    E(x, y) = [C(x, y) + C(x+90, y+90) - C(x, y+90) - C(x+90, y)] / sum,
    S = |E(a, b) - E(a, b') + E(a', b) + E(a', b')|. Errors are first-order
    Poisson propagation; the four groups share no counts.
    """
    table = {(_angle_key(t1), _angle_key(t2)): float(c) for (t1, t2), c in counts_16.items()}

    def count(t1: float, t2: float) -> float:
        key = (_angle_key(t1), _angle_key(t2))
        if key not in table:
            raise EntanglementError(f"missing coincidence count for setting ({t1:g}, {t2:g})")
        return table[key]

    def correlation(x: float, y: float) -> tuple[float, float]:
        terms = [(count(x, y), 1.0), (count(x + 90, y + 90), 1.0), (count(x, y + 90), -1.0), (count(x + 90, y), -1.0)]
        total = sum(n for n, _ in terms)
        if total <= 0:
            raise EntanglementError(f"undefined correlation at ({x:g}, {y:g}): no coincidences in the group")
        e = sum(sign * n for n, sign in terms) / total
        variance = sum((sign - e) ** 2 * n for n, sign in terms) / total**2
        return e, variance

    (a, a_prime), (b, b_prime) = _settings(phase_sign)
    e_ab, v_ab = correlation(a, b)
    e_abp, v_abp = correlation(a, b_prime)
    e_apb, v_apb = correlation(a_prime, b)
    e_apbp, v_apbp = correlation(a_prime, b_prime)

    s_value = abs(e_ab - e_abp + e_apb + e_apbp)
    s_error = math.sqrt(v_ab + v_abp + v_apb + v_apbp)
    return ChshResult(
        s_value=s_value,
        s_error=s_error,
        correlations={(a, b): e_ab, (a, b_prime): e_abp, (a_prime, b): e_apb, (a_prime, b_prime): e_apbp},
    )


def expected_chsh_counts(source: EntangledSourceSpec) -> dict[tuple[float, float], float]:
    """Noise-free mean coincidences at the 16 settings."""
    return {
        (t1, t2): float(expected_fringe_counts(t1, t2, source))
        for t1 in SIGNAL_ANGLES_DEG
        for t2 in IDLER_ANGLES_DEG
    }


def sample_chsh_counts(source: EntangledSourceSpec, seed: int) -> dict[tuple[float, float], int]:
    """Poisson coincidences at the 16 settings, one substream per setting."""
    means = expected_chsh_counts(source)
    generators = spawn_generators(seed, len(means))
    return {key: int(rng.poisson(mean)) for (key, mean), rng in zip(means.items(), generators)}
