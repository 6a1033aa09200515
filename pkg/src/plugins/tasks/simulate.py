# -*- coding: utf-8 -*-
#  Copyleft 2026 fiberpairs contributors.
#  This file is part of fiberpairs. Licensed under GPLv3+.

"""Simulate Task: one Monte Carlo accumulation with its TCSPC histogram."""

from __future__ import annotations

import asyncio

from core.enums import Verb
from core.exceptions import CarUndefinedError
from core.file_utils import Table
from core.task_base import TaskBase, TaskOutput, register_task
from plugins.physics.coincidence_sim import (
    car,
    expected_rates_for,
    simulate_config,
    true_coincidences,
)


@register_task
class SimulateTask(TaskBase):
    name = "simulate"
    verb = Verb.SIMULATE
    description = "Monte Carlo coincidence histogram."
    version = "1.0.0"
    author = "fiberpairs contributors"

    async def run(self) -> TaskOutput:
        cfg = self.config
        result = await asyncio.to_thread(simulate_config, cfg, workers=self.workers)
        expected = expected_rates_for(cfg, warn=False)

        try:
            measured_car = car(result)
        except CarUndefinedError as e:
            self.logger.warning(str(e))
            measured_car = None
        net = true_coincidences(result)

        rows = [
            (center * 1e9, count)
            for center, count in zip(result.bin_centers_s.tolist(), result.histogram.tolist())
        ]
        summary = {
            **result.summary(),
            "car": measured_car,
            "true_coincidences": net.counts,
            "true_coincidences_clipped": net.clipped,
            "singles_rate_s": result.singles_rate_s,
            "singles_rate_i": result.singles_rate_i,
            "expected": expected.as_dict(),
            "expected_car": expected.car if expected.accidental_rate > 0 else None,
        }
        return TaskOutput(tables={"histogram": Table(("delay_ns", "counts"), rows)}, summary=summary)
