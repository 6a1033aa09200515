# -*- coding: utf-8 -*-
#  Copyleft 2026 fiberpairs contributors.
#  This file is part of fiberpairs. Licensed under GPLv3+.

"""Phase-match Task: Delta k over a detuning grid and its zero crossing."""

from __future__ import annotations

from core.enums import DeltaKMode, Verb
from core.file_utils import Table
from core.task_base import TaskBase, TaskOutput, register_task
from core.units import beta2_to_ps2_per_km, detuning_to_wavelength_offset_nm
from plugins.physics.fiber_model import beta_n
from plugins.physics.phase_matching import DetuningGrid, delta_k_curve, phase_matched_detuning, spm_term


@register_task
class PhaseMatchTask(TaskBase):
    name = "phase_match"
    verb = Verb.PHASE_MATCH
    description = "Wavevector mismatch and phase matched detuning."
    version = "1.0.0"
    author = "fiberpairs contributors"

    async def run(self) -> TaskOutput:
        cfg = self.config
        mode = DeltaKMode(self.option("mode", DeltaKMode.TRUNCATED))
        include_spm = bool(self.option("include_spm", True))
        grid = DetuningGrid(
            float(self.option("start_ghz", 0.0)),
            float(self.option("stop_ghz", 1500.0)),
            float(self.option("step_ghz", 1.0)),
        )
        nu, dk = delta_k_curve(grid, cfg.pump, cfg.fiber, include_spm=include_spm, mode=mode)
        root = phase_matched_detuning(cfg.pump, cfg.fiber, mode=mode)
        return TaskOutput(
            tables={"delta_k": Table(("detuning_ghz", "delta_k_per_m"), list(zip(nu.tolist(), dk.tolist())))},
            summary={
                "mode": mode,
                "include_spm": include_spm,
                "phase_matched_ghz": root,
                "phase_matched_offset_nm": detuning_to_wavelength_offset_nm(root, cfg.pump.lambda_p_nm),
                "spm_term_per_m": spm_term(cfg.pump, cfg.fiber),
                "beta2_ps2_per_km": beta2_to_ps2_per_km(beta_n(cfg.pump.lambda_p_nm, 2, cfg.fiber)),
            },
        )
