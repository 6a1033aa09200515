# -*- coding: utf-8 -*-
#  Copyleft 2026 fiberpairs contributors.
#  This file is part of fiberpairs. Licensed under GPLv3+.

"""Bandwidth Task: HWHM of the mu_p spectrum against fiber length."""

from __future__ import annotations

import numpy as np

from core.enums import HwhmReference, Verb
from core.file_utils import Table
from core.task_base import TaskBase, TaskOutput, register_task
from plugins.physics.pair_spectrum import hwhm_bandwidth
from plugins.physics.phase_matching import phase_matched_detuning


@register_task
class BandwidthTask(TaskBase):
    name = "bandwidth"
    verb = Verb.BANDWIDTH
    description = "HWHM bandwidth against fiber length."
    version = "1.0.0"
    author = "fiberpairs contributors"

    async def run(self) -> TaskOutput:
        cfg = self.config
        reference = HwhmReference(self.option("reference", HwhmReference.FROM_PUMP))
        explicit = tuple(self.option("lengths", ()))
        if explicit:
            lengths = np.asarray(explicit, dtype=float)
        else:
            lengths = np.geomspace(
                float(self.option("min_length_m", 2.0)),
                float(self.option("max_length_m", 500.0)),
                int(self.option("points", 40)),
            )

        asymptote = phase_matched_detuning(cfg.pump, cfg.fiber)
        rows = []
        for length in lengths:
            fiber = cfg.fiber.model_copy(update={"length_m": float(length)})
            rows.append((float(length), hwhm_bandwidth(cfg.pump, fiber, reference=reference), asymptote))

        widths = [r[1] for r in rows]
        return TaskOutput(
            tables={"bandwidth": Table(("length_m", "hwhm_ghz", "phase_matched_ghz"), rows)},
            summary={
                "reference": reference,
                "phase_matched_ghz": asymptote,
                "monotone_decreasing": bool(np.all(np.diff(widths) < 0)),
            },
        )
