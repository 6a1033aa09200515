# -*- coding: utf-8 -*-
#  Copyleft 2026 fiberpairs contributors.
#  This file is part of fiberpairs. Licensed under GPLv3+.

"""Spectrum Task: mu_p(nu) curves for a family of fiber lengths and pump powers."""

from __future__ import annotations

import numpy as np

from core.enums import Verb
from core.exceptions import WindowTooNarrowError
from core.file_utils import Table
from core.task_base import TaskBase, TaskOutput, register_task
from plugins.physics.pair_spectrum import hwhm_bandwidth, spectrum_sweep
from plugins.physics.phase_matching import DetuningGrid, phase_matched_detuning

DEFAULT_LENGTHS_M = (3.8, 11.4, 31.5, 308.0)


@register_task
class SpectrumTask(TaskBase):
    name = "spectrum"
    verb = Verb.SPECTRUM
    description = "Pair generation coefficient spectra."
    version = "1.0.0"
    author = "fiberpairs contributors"

    async def run(self) -> TaskOutput:
        cfg = self.config
        lengths = tuple(self.option("lengths", ()) or DEFAULT_LENGTHS_M)
        powers = tuple(self.option("powers", ()) or (cfg.pump.peak_power_w,))
        grid = DetuningGrid(
            float(self.option("start_ghz", -1500.0)),
            float(self.option("stop_ghz", 1500.0)),
            float(self.option("step_ghz", 5.0)),
        )
        bandwidth = float(self.option("bandwidth_ghz", cfg.signal.bandwidth_ghz))
        normalized = bool(self.option("normalized", False))

        header = ["detuning_ghz"]
        columns = []
        curves = []
        for length in lengths:
            fiber = cfg.fiber.model_copy(update={"length_m": float(length)})
            for power in powers:
                pump = cfg.pump.model_copy(update={"peak_power_w": float(power)})
                spectrum = spectrum_sweep(grid, pump, fiber, bandwidth)
                header.append(f"{'norm_' if normalized else ''}mu_p_L{length:g}m_P{power:g}W")
                columns.append(spectrum.normalized() if normalized else spectrum.mu_p)
                try:
                    hwhm = hwhm_bandwidth(pump, fiber)
                except WindowTooNarrowError as e:
                    self.logger.warning(str(e))
                    hwhm = None
                curves.append(
                    {
                        "length_m": float(length),
                        "peak_power_w": float(power),
                        "mu_p_max": float(np.max(spectrum.mu_p)),
                        "mu_p_limit": spectrum.peak_limit,
                        "hwhm_ghz": hwhm,
                        "phase_matched_ghz": phase_matched_detuning(pump, fiber),
                        "local_maxima_ghz": spectrum.local_maxima().tolist(),
                    }
                )

        nu = grid.points
        rows = [(nu[i], *(col[i] for col in columns)) for i in range(nu.size)]
        return TaskOutput(
            tables={"spectrum": Table(tuple(header), rows)},
            summary={"filter_bw_ghz": bandwidth, "normalized": normalized, "curves": curves},
        )
