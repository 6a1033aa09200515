# -*- coding: utf-8 -*-
#  Copyleft 2026 fiberpairs contributors.
#  This file is part of fiberpairs. Licensed under GPLv3+.

"""Calibrate Task: Raman noise coefficient and 3 kcps operating points."""

from __future__ import annotations

import asyncio

from core.enums import Verb
from core.exceptions import CarUndefinedError
from core.file_utils import Table
from core.task_base import TaskBase, TaskOutput, register_task
from plugins.physics.coincidence_sim import (
    RAMAN_ANCHORS_W_M,
    RateReport,
    TARGET_SINGLES_CPS,
    calibrate_raman_coeff,
    expected_rates,
    power_for_singles,
)

DEFAULT_LENGTHS_M = (3.8, 11.4, 31.5, 308.0)
HEADER = ("length_m", "peak_power_w", "power_length_w_m", "singles_s", "car", "car_at_config_power")


@register_task
class CalibrateTask(TaskBase):
    name = "calibrate"
    verb = Verb.CALIBRATE
    description = "Raman coefficient fit and CAR at equal singles rates."
    version = "1.0.0"
    author = "fiberpairs contributors"

    async def run(self) -> TaskOutput:
        cfg = self.config
        target = float(self.option("target_cps", TARGET_SINGLES_CPS))
        lengths = tuple(float(v) for v in (self.option("lengths", ()) or DEFAULT_LENGTHS_M))

        calibration = await asyncio.to_thread(
            calibrate_raman_coeff, cfg.pump, cfg.fiber, cfg.signal, cfg.detector_s, target_cps=target
        )
        fiber = cfg.fiber.model_copy(update={"raman_coeff": calibration.coefficient})

        rows = []
        for length in lengths:
            fb = fiber.model_copy(update={"length_m": length})
            power = power_for_singles(target, cfg.pump, fb, cfg.signal, cfg.idler, cfg.detector_s, cfg.detector_i)
            pump = cfg.pump.model_copy(update={"peak_power_w": power})
            at_target = expected_rates(pump, fb, cfg.signal, cfg.idler, cfg.detector_s, cfg.detector_i, warn=False)
            at_config = expected_rates(cfg.pump, fb, cfg.signal, cfg.idler, cfg.detector_s, cfg.detector_i, warn=False)
            rows.append((length, power, power * length, at_target.singles_s, _car(at_target), _car(at_config)))

        cars = [row[4] for row in rows if row[4] is not None]
        return TaskOutput(
            tables={"operating_points": Table(HEADER, rows)},
            summary={
                "raman_coeff": calibration.coefficient,
                "configured_raman_coeff": cfg.fiber.raman_coeff,
                "target_cps": target,
                "anchors": [
                    {"length_m": length, "power_length_w_m": pl}
                    for length, pl in RAMAN_ANCHORS_W_M
                ],
                "anchor_fit": [
                    {"length_m": length, "peak_power_w": power, "singles_s": singles, "relative_residual": residual}
                    for length, power, singles, residual in calibration.anchors
                ],
                "car_decreases_with_length": all(a > b for a, b in zip(cars, cars[1:])),
            },
        )


def _car(report: RateReport) -> float | None:
    try:
        return report.car
    except CarUndefinedError:
        return None
