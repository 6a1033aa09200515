# -*- coding: utf-8 -*-
#  Copyleft 2026 fiberpairs contributors.
#  This file is part of fiberpairs. Licensed under GPLv3+.

"""Mu-extract Task: mu_p from power sweeps, or a detuning x length table."""

from __future__ import annotations

import asyncio
from pathlib import Path
from typing import Any

from core.enums import Verb
from core.exceptions import DomainError, ExtractionError, UsageError
from core.file_utils import Table, read_json
from core.task_base import TaskBase, TaskOutput, register_task
from plugins.physics.analysis import extract_mu_p, mu_p_table
from plugins.physics.pair_spectrum import mu_p

DEFAULT_DETUNINGS_GHZ = (400.0, 600.0, 800.0, 1000.0)
DEFAULT_LENGTHS_M = (3.8, 11.4, 31.5, 308.0)
HEADER = ("detuning_ghz", "length_m", "mu_p_model", "mu_p_extracted", "mu_p_extracted_se", "note")


@register_task
class MuExtractTask(TaskBase):
    name = "mu_extract"
    verb = Verb.MU_EXTRACT
    description = "Pair generation coefficient extraction."
    version = "1.0.0"
    author = "fiberpairs contributors"

    async def run(self) -> TaskOutput:
        inputs = [Path(p) for p in self.option("inputs", ())]
        table_flags = [key for key in ("detunings", "lengths", "powers", "source") if self.option(key)]
        if inputs and table_flags:
            raise UsageError(f"sweep summaries cannot be combined with table options: {', '.join(table_flags)}")
        if inputs:
            return self._from_sweeps(inputs)
        return await self._table()

    def _from_sweeps(self, inputs: list[Path]) -> TaskOutput:
        cfg = self.config
        rows = []
        failures = 0
        for path in inputs:
            document = read_json(path)
            if document.get("axis") != "power":
                raise DomainError(f"{path}: mu_p extraction needs a power sweep")
            points = document["points"]
            lengths = {float(p["length_m"]) for p in points}
            if len(lengths) != 1:
                raise DomainError(f"{path}: power sweep mixes fiber lengths")
            length = lengths.pop()
            detuning = float(document["detuning_ghz"])
            fiber = cfg.fiber.model_copy(update={"length_m": length})
            model = float(mu_p(detuning, cfg.pump, fiber, cfg.signal.bandwidth_ghz))
            try:
                estimate = extract_mu_p(
                    [(p["peak_power_w"], p["c_c"]) for p in points],
                    [(p["peak_power_w"], p["c_a"]) for p in points],
                    length,
                    float(document["eta_s"]),
                    float(document["eta_i"]),
                    float(document["duration_s"]),
                )
                rows.append((detuning, length, model, estimate.value, estimate.std_error, ""))
            except ExtractionError as e:
                failures += 1
                self.logger.warning(f"{path.name}: {e}")
                rows.append((detuning, length, model, None, None, str(e)))

        if failures == len(inputs):
            raise ExtractionError("noise-dominated: mu_p not extractable from any input sweep")
        return TaskOutput(
            tables={"mu_p": Table(HEADER, rows)},
            summary={"inputs": [p.name for p in inputs], "gaps": failures},
        )

    async def _table(self) -> TaskOutput:
        cfg = self.config
        detunings = tuple(self.option("detunings", ()) or DEFAULT_DETUNINGS_GHZ)
        lengths = tuple(self.option("lengths", ()) or DEFAULT_LENGTHS_M)
        source = str(self.option("source", "model"))
        kwargs: dict[str, Any] = {
            "pump": cfg.pump,
            "fiber": cfg.fiber,
            "channel": cfg.signal,
            "detectors": cfg.detectors,
            "source": source,
            "duration_s": cfg.run.duration_s,
            "seed": cfg.run.seed,
            "window_s": cfg.run.coincidence_window_s,
            "bin_width_s": cfg.run.bin_width_s,
            "side_windows": cfg.run.side_windows,
            "segment_s": cfg.run.segment_s,
            "workers": self.workers,
        }
        powers = tuple(self.option("powers", ()))
        if powers:
            kwargs["powers_w"] = powers
        table = await asyncio.to_thread(mu_p_table, detunings, lengths, **kwargs)

        rows = [
            (c.detuning_ghz, c.length_m, c.model, c.simulated, c.simulated_se, c.note) for c in table.cells
        ]
        return TaskOutput(
            tables={"mu_p": Table(HEADER, rows)},
            summary={
                "source": source,
                "non_monotone": {f"{length:g}": flag for length, flag in table.non_monotone.items()},
                "gaps": [
                    {"detuning_ghz": c.detuning_ghz, "length_m": c.length_m}
                    for c in table.cells
                    if source != "model" and c.simulated is None
                ],
            },
        )
