# -*- coding: utf-8 -*-
#  Copyleft 2026 fiberpairs contributors.
#  This file is part of fiberpairs. Licensed under GPLv3+.

"""Dispersion Task: D, S and beta2 against wavelength, Taylor coefficients at the pump."""

from __future__ import annotations

import numpy as np

from core.enums import BetaMethod, Verb
from core.exceptions import PhaseMatchingError
from core.file_utils import Table
from core.task_base import TaskBase, TaskOutput, register_task
from core.units import beta2_to_ps2_per_km
from plugins.physics.fiber_model import beta2_from_exact_k, beta_n, dispersion_D, dispersion_curve, dispersion_slope
from plugins.physics.phase_matching import phase_matched_detuning

COMPARISON_PUMPS_NM = (1320.0, 1552.52)


@register_task
class DispersionTask(TaskBase):
    name = "dispersion"
    verb = Verb.DISPERSION
    description = "Group velocity dispersion curve."
    version = "1.0.0"
    author = "fiberpairs contributors"

    async def run(self) -> TaskOutput:
        cfg = self.config
        fiber = cfg.fiber
        start = float(self.option("start_nm", 1200.0))
        stop = float(self.option("stop_nm", 1700.0))
        step = float(self.option("step_nm", 5.0))
        wavelengths = start + step * np.arange(int(np.floor((stop - start) / step + 1e-9)) + 1)

        d = dispersion_curve(wavelengths, fiber)
        rows = [
            (lam, dv, dispersion_slope(lam, fiber), beta2_to_ps2_per_km(beta_n(lam, 2, fiber)))
            for lam, dv in zip(wavelengths.tolist(), d.tolist())
        ]

        lam_p = cfg.pump.lambda_p_nm
        comparison = []
        for lam in COMPARISON_PUMPS_NM:
            pump = cfg.pump.model_copy(update={"lambda_p_nm": lam})
            try:
                root = phase_matched_detuning(pump, fiber)
            except PhaseMatchingError:
                root = None
            comparison.append(
                {"lambda_p_nm": lam, "d_ps_nm_km": dispersion_D(lam, fiber), "phase_matched_ghz": root}
            )

        return TaskOutput(
            tables={
                "dispersion": Table(("wavelength_nm", "d_ps_nm_km", "slope_ps_nm2_km", "beta2_ps2_per_km"), rows)
            },
            summary={
                "lambda_p_nm": lam_p,
                "d_ps_nm_km": dispersion_D(lam_p, fiber),
                "slope_ps_nm2_km": dispersion_slope(lam_p, fiber),
                "beta2_s2_per_m": beta_n(lam_p, 2, fiber),
                "beta2_s2_per_m_exact_k": beta2_from_exact_k(lam_p, fiber),
                "beta3_s3_per_m": beta_n(lam_p, 3, fiber),
                "beta3_s3_per_m_fd": beta_n(lam_p, 3, fiber, BetaMethod.FINITE_DIFFERENCE),
                "beta4_s4_per_m": beta_n(lam_p, 4, fiber),
                "beta4_s4_per_m_fd": beta_n(lam_p, 4, fiber, BetaMethod.FINITE_DIFFERENCE),
                "pump_comparison": comparison,
            },
        )
