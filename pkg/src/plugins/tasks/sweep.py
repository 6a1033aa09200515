# -*- coding: utf-8 -*-
#  Copyleft 2026 fiberpairs contributors.
#  This file is part of fiberpairs. Licensed under GPLv3+.

"""Sweep Task: simulated coincidences against pump power or fiber length."""

from __future__ import annotations

from typing import Any

import numpy as np

from config.models import ExperimentConfig
from core.concurrency import derive_seeds, gather_in_threads
from core.enums import SweepAxis, Verb
from core.exceptions import CarUndefinedError, DomainError
from core.file_utils import Table
from core.task_base import TaskBase, TaskOutput, register_task
from plugins.physics.analysis import fit_loglog_slope
from plugins.physics.coincidence_sim import (
    car,
    detection_efficiency,
    expected_rates_for,
    shot_noise,
    simulate_config,
    true_coincidences,
)

# one decade of peak power, 6 log-spaced steps
DEFAULT_POWERS_W: tuple[float, ...] = tuple(float(p) for p in np.round(np.logspace(0.0, 1.0, 7), 6))

DEFAULT_VALUES = {
    SweepAxis.POWER: DEFAULT_POWERS_W,
    SweepAxis.LENGTH: (3.8, 11.4, 31.5, 308.0),
}

HEADER = (
    "value",
    "peak_power_w",
    "length_m",
    "singles_s",
    "singles_i",
    "c_c",
    "c_c_err",
    "c_a",
    "c_a_err",
    "car",
    "true_coincidences",
    "true_err",
    "expected_true",
)


def _point(config: ExperimentConfig) -> dict[str, Any]:
    result = simulate_config(config, workers=1)
    expected = expected_rates_for(config, warn=False)
    try:
        ratio: float | None = car(result)
    except CarUndefinedError:
        ratio = None
    net = true_coincidences(result)
    # C_a is a mean over 2K windows
    ca_err = shot_noise(result.c_a * len(result.side_window_counts)) / len(result.side_window_counts)
    return {
        "peak_power_w": config.pump.peak_power_w,
        "length_m": config.fiber.length_m,
        "singles_s": result.singles_s,
        "singles_i": result.singles_i,
        "c_c": result.c_c,
        "c_c_err": shot_noise(result.c_c),
        "c_a": result.c_a,
        "c_a_err": ca_err,
        "car": ratio,
        "true_coincidences": net.counts,
        "true_err": (result.c_c + ca_err**2) ** 0.5,
        "expected_true": expected.true_rate * config.run.duration_s,
        "seed": result.seed,
    }


@register_task
class SweepTask(TaskBase):
    name = "sweep"
    verb = Verb.SWEEP
    description = "Coincidences against pump power or fiber length."
    version = "1.0.0"
    author = "fiberpairs contributors"

    async def run(self) -> TaskOutput:
        cfg = self.config
        axis = SweepAxis(self.option("axis", SweepAxis.POWER))
        values = tuple(float(v) for v in (self.option("values", ()) or DEFAULT_VALUES[axis]))
        if not values:
            raise DomainError("sweep needs at least one value")

        seeds = derive_seeds(cfg.run.seed, len(values))
        configs = []
        for value, seed in zip(values, seeds):
            update: dict[str, Any] = {"run": cfg.run.model_copy(update={"seed": seed})}
            if axis == SweepAxis.POWER:
                update["pump"] = cfg.pump.model_copy(update={"peak_power_w": value})
            else:
                update["fiber"] = cfg.fiber.model_copy(update={"length_m": value})
            configs.append(cfg.model_copy(update=update))

        points = await gather_in_threads(_point, configs, self.workers)
        for value, point in zip(values, points):
            point["value"] = value
        rows = [tuple(point[key] for key in HEADER) for point in points]

        positive = [(p["value"], p["true_coincidences"]) for p in points if p["true_coincidences"] > 0]
        slope = None
        if len(positive) >= 3:
            fit = fit_loglog_slope(positive)
            slope = {"slope": fit.slope, "slope_error": fit.slope_error}

        return TaskOutput(
            tables={"sweep": Table(HEADER, rows)},
            summary={
                "axis": axis,
                "points": points,
                "loglog_true_vs_value": slope,
                "detuning_ghz": abs(cfg.signal.detuning_ghz),
                "eta_s": detection_efficiency(cfg.signal, cfg.detector_s),
                "eta_i": detection_efficiency(cfg.idler, cfg.detector_i),
                "duration_s": cfg.run.duration_s,
            },
        )
