# -*- coding: utf-8 -*-
#  Copyleft 2026 fiberpairs contributors.
#  This file is part of fiberpairs. Licensed under GPLv3+.

"""Power-law fits of coincidence data and mu_p extraction."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np
from scipy import stats

from config.models import ChannelSpec, DetectorSpec, FiberSpec, PumpSpec
from core.concurrency import derive_seeds, run_parallel
from core.enums import FitKind
from core.exceptions import DomainError, ExtractionError
from Singletons import Logger

from .coincidence_sim import detection_efficiency, simulate
from .pair_spectrum import mu_p

logger = Logger()

# alpha must exceed this many standard errors
SIGNIFICANCE_SE = 3.0
DEFAULT_EXTRACTION_POWERS_W: tuple[float, ...] = (0.25, 0.5, 0.75, 1.0)

Source = Literal["model", "simulation", "both"]


@dataclass(frozen=True)
class FitResult:
    kind: FitKind
    coefficients: tuple[float, ...]
    std_errors: tuple[float, ...]
    residual_norm: float

    @property
    def slope(self) -> float:
        """Log-log slope, or the P^2 coefficient for quadratic fits."""
        return self.coefficients[1] if self.kind == FitKind.LOGLOG_LINEAR else self.coefficients[0]

    @property
    def slope_error(self) -> float:
        return self.std_errors[1] if self.kind == FitKind.LOGLOG_LINEAR else self.std_errors[0]


def fit_loglog_slope(points: Sequence[tuple[float, float]]) -> FitResult:
    """Ordinary least squares on (log x, log y)."""
    if len(points) < 3:
        raise DomainError("log-log fit needs at least 3 points")
    x = np.array([p[0] for p in points], dtype=float)
    y = np.array([p[1] for p in points], dtype=float)
    if np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("log-log fit needs strictly positive x and y")
    lx, ly = np.log(x), np.log(y)
    fit = stats.linregress(lx, ly)
    residual = ly - (fit.intercept + fit.slope * lx)
    return FitResult(
        kind=FitKind.LOGLOG_LINEAR,
        coefficients=(float(fit.intercept), float(fit.slope)),
        std_errors=(abs(float(fit.intercept_stderr)), abs(float(fit.stderr))),
        residual_norm=float(np.linalg.norm(residual)),
    )


def fit_quadratic(
    powers_w: Sequence[float],
    net_counts: Sequence[float],
    weights: Sequence[float] | None = None,
    *,
    with_linear: bool = False,
) -> FitResult:
    """
    Weighted least squares of net counts against alpha P^2 (plus beta P when
    with_linear is set, to expose linear leakage). Weights are inverse
    variances, so the covariance is (X^T W X)^-1 without rescaling.
    """
    p = np.asarray(powers_w, dtype=float)
    y = np.asarray(net_counts, dtype=float)
    w = np.ones_like(p) if weights is None else np.asarray(weights, dtype=float)
    columns = [p**2, p] if with_linear else [p**2]
    design = np.column_stack(columns)
    if p.size < design.shape[1] + 1:
        raise DomainError("quadratic fit needs more points than coefficients")

    normal = design.T @ (design * w[:, None])
    covariance = np.linalg.pinv(normal)
    coefficients = covariance @ (design.T @ (w * y))
    residual = y - design @ coefficients
    return FitResult(
        kind=FitKind.QUADRATIC_WITH_LINEAR if with_linear else FitKind.QUADRATIC_THROUGH_ORIGIN,
        coefficients=tuple(float(c) for c in coefficients),
        std_errors=tuple(float(math.sqrt(max(v, 0.0))) for v in np.diag(covariance)),
        residual_norm=float(math.sqrt(float(np.sum(w * residual**2)))),
    )


@dataclass(frozen=True)
class MuPEstimate:
    value: float
    std_error: float
    fit: FitResult
    leakage: FitResult | None = None


def extract_mu_p(
    cc_vs_power: Sequence[tuple[float, float]],
    ca_vs_power: Sequence[tuple[float, float]],
    length_m: float,
    eta_s: float,
    eta_i: float,
    duration_s: float,
) -> MuPEstimate:
    """
    mu_p from the P^2 coefficient of C_c - C_a.

    Each point is weighted by 1 / (C_c + C_a). mu_p = alpha / (eta_s eta_i
    L^2 T). An alpha that does not clear SIGNIFICANCE_SE standard errors is
    noise-dominated and raises ExtractionError.
    """
    if len(cc_vs_power) < 3 or len(cc_vs_power) != len(ca_vs_power):
        raise DomainError("mu_p extraction needs at least 3 matching (power, counts) points")
    for eta in (eta_s, eta_i):
        if not 0.0 < eta <= 1.0:
            raise DomainError("detection efficiencies must lie in (0, 1]")
    if not duration_s > 0 or not length_m > 0:
        raise DomainError("length and accumulation time must be positive")

    powers = np.array([p for p, _ in cc_vs_power], dtype=float)
    if not np.allclose(powers, [p for p, _ in ca_vs_power]):
        raise DomainError("C_c and C_a must be sampled at the same powers")
    cc = np.array([c for _, c in cc_vs_power], dtype=float)
    ca = np.array([c for _, c in ca_vs_power], dtype=float)
    weights = 1.0 / np.maximum(cc + ca, 1.0)

    fit = fit_quadratic(powers, cc - ca, weights)
    alpha, alpha_se = fit.coefficients[0], fit.std_errors[0]
    if alpha <= SIGNIFICANCE_SE * alpha_se:
        raise ExtractionError(
            f"noise-dominated: mu_p not extractable (alpha = {alpha:.3g} +/- {alpha_se:.3g} counts/W^2)"
        )

    leakage = fit_quadratic(powers, cc - ca, weights, with_linear=True) if powers.size >= 3 else None
    scale = eta_s * eta_i * length_m**2 * duration_s
    return MuPEstimate(value=alpha / scale, std_error=alpha_se / scale, fit=fit, leakage=leakage)


# --------------------------------------------------------------------- table


@dataclass(frozen=True)
class MuPCell:
    detuning_ghz: float
    length_m: float
    model: float | None
    simulated: float | None = None
    simulated_se: float | None = None
    note: str = ""


@dataclass(frozen=True)
class MuPTable:
    cells: tuple[MuPCell, ...]
    # length -> True when the model mu_p rises with detuning somewhere
    non_monotone: dict[float, bool] = field(default_factory=dict)

    def cell(self, detuning_ghz: float, length_m: float) -> MuPCell:
        for c in self.cells:
            if math.isclose(c.detuning_ghz, detuning_ghz) and math.isclose(c.length_m, length_m):
                return c
        raise KeyError((detuning_ghz, length_m))


@dataclass(frozen=True)
class _CellJob:
    detuning_ghz: float
    length_m: float
    seed: int


def mu_p_table(
    detunings_ghz: Sequence[float],
    lengths_m: Sequence[float],
    *,
    pump: PumpSpec,
    fiber: FiberSpec,
    channel: ChannelSpec,
    detectors: tuple[DetectorSpec, DetectorSpec],
    source: Source = "model",
    powers_w: Sequence[float] = DEFAULT_EXTRACTION_POWERS_W,
    duration_s: float = 600.0,
    seed: int = 0,
    window_s: float = 3e-9,
    bin_width_s: float = 176e-12,
    side_windows: int = 2,
    segment_s: float = 1.0,
    workers: int = 1,
) -> MuPTable:
    """
    mu_p per (detuning, length). The model column evaluates the closed form;
    the simulation column extracts mu_p from a simulated power sweep and
    leaves a gap with a note when the extraction is noise-dominated.
    """
    if not detunings_ghz or not lengths_m:
        raise DomainError("mu_p table needs at least one detuning and one length")
    det_s, det_i = detectors
    eta_s = detection_efficiency(channel, det_s)
    eta_i = detection_efficiency(channel, det_i)
    bandwidth = channel.bandwidth_ghz

    jobs = [
        _CellJob(float(nu), float(length), s)
        for (nu, length), s in zip(
            [(nu, length) for length in lengths_m for nu in detunings_ghz],
            derive_seeds(seed, len(lengths_m) * len(detunings_ghz)),
        )
    ]

    def model_value(job: _CellJob) -> float:
        fb = fiber.model_copy(update={"length_m": job.length_m})
        return float(mu_p(job.detuning_ghz, pump, fb, bandwidth))

    def simulated_value(job: _CellJob) -> tuple[float | None, float | None, str]:
        fb = fiber.model_copy(update={"length_m": job.length_m})
        signal = channel.model_copy(update={"detuning_ghz": abs(job.detuning_ghz)})
        idler = channel.model_copy(update={"detuning_ghz": -abs(job.detuning_ghz)})
        cc: list[tuple[float, float]] = []
        ca: list[tuple[float, float]] = []
        for power, point_seed in zip(powers_w, derive_seeds(job.seed, len(powers_w))):
            result = simulate(
                pump.model_copy(update={"peak_power_w": power}),
                fb,
                (signal, idler),
                detectors,
                duration_s,
                point_seed,
                window_s=window_s,
                bin_width_s=bin_width_s,
                side_windows=side_windows,
                segment_s=segment_s,
            )
            cc.append((power, float(result.c_c)))
            ca.append((power, result.c_a))
        try:
            estimate = extract_mu_p(cc, ca, job.length_m, eta_s, eta_i, duration_s)
        except ExtractionError as e:
            logger.info(f"mu_p gap at {job.detuning_ghz:g} GHz, {job.length_m:g} m: {e}")
            return None, None, str(e)
        return estimate.value, estimate.std_error, ""

    def evaluate(job: _CellJob) -> MuPCell:
        model = model_value(job) if source in ("model", "both") else None
        if source == "model":
            return MuPCell(job.detuning_ghz, job.length_m, model)
        value, se, note = simulated_value(job)
        return MuPCell(job.detuning_ghz, job.length_m, model, value, se, note)

    cells = tuple(run_parallel(evaluate, jobs, max_workers=workers))

    non_monotone: dict[float, bool] = {}
    ordered = sorted(abs(float(nu)) for nu in detunings_ghz)
    for length in lengths_m:
        fb = fiber.model_copy(update={"length_m": float(length)})
        curve = np.atleast_1d(np.asarray(mu_p(ordered, pump, fb, bandwidth), dtype=float))
        non_monotone[float(length)] = bool(np.any(np.diff(curve) > 0))
    return MuPTable(cells=cells, non_monotone=non_monotone)
