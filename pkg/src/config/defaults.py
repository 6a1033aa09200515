# defaults.py

from __future__ import annotations

from typing import Any

from core.enums import Provenance

CONFIG_VERSION = "1.0"

SMF28_REFERENCE_FIBER: dict[str, Any] = {
    "lambda_zgvd_nm": 1310.0,
    "slope_s0": 0.0697,
    "gamma_per_w_km": 0.67,
    "raman_coeff": 3.7e-7,
}

SMF28_DATASHEET_FIBER: dict[str, Any] = {
    "lambda_zgvd_nm": 1310.0,
    "slope_s0": 0.092,
    "gamma_per_w_km": 1.3,
    "raman_coeff": 3.3e-7,
}

DEFAULT_CONFIG: dict[str, Any] = {
    "version": CONFIG_VERSION,
    "preset": "",
    "fiber": {"length_m": 11.4, **SMF28_REFERENCE_FIBER},
    "pump": {
        "lambda_p_nm": 1552.52,
        "peak_power_w": 3.0,
        "pulse_duration_s": 15e-12,
        "rep_rate_hz": 18e6,
    },
    "signal": {"detuning_ghz": 400.0, "bandwidth_ghz": 75.0, "transmittance": 0.6},
    "idler": {"detuning_ghz": -400.0, "bandwidth_ghz": 75.0, "transmittance": 0.6},
    "detector_s": {
        "efficiency": 0.05,
        "gate_width_s": 3.1e-9,
        "dead_time_s": 10e-6,
        "jitter_fwhm_s": 300e-12,
        "dark_prob_per_gate": 0.0,
    },
    "detector_i": {
        "efficiency": 0.05,
        "gate_width_s": 3.1e-9,
        "dead_time_s": 10e-6,
        "jitter_fwhm_s": 300e-12,
        "dark_prob_per_gate": 0.0,
    },
    "run": {
        "duration_s": 600.0,
        "seed": 1552,
        "coincidence_window_s": 3e-9,
        "bin_width_s": 176e-12,
        "segment_s": 1.0,
        "side_windows": 2,
        "workers": 4,
        "saturation_cps": 10_000.0,
    },
    "logging": {"level": "INFO", "file": ""},
}

PRESETS: dict[str, dict[str, Any]] = {
    "smf28-paper": {"fiber": dict(SMF28_REFERENCE_FIBER)},
    "smf28-datasheet": {"fiber": dict(SMF28_DATASHEET_FIBER)},
    "paper-fig4b": {
        "fiber": {"length_m": 11.4, **SMF28_REFERENCE_FIBER},
        "pump": {"peak_power_w": 3.0},
        "signal": {"detuning_ghz": 400.0},
        "idler": {"detuning_ghz": -400.0},
        "run": {"duration_s": 600.0},
    },
}

# descriptive names for the two reference-setup presets
PRESET_ALIASES: dict[str, str] = {"smf28-reference": "smf28-paper", "pair-source-11m": "paper-fig4b"}
PRESETS.update({alias: PRESETS[name] for alias, name in PRESET_ALIASES.items()})

_REF = Provenance.REFERENCE_SETUP
_CAL = Provenance.CALIBRATED
_INV = Provenance.INVENTED

PROVENANCE: dict[str, tuple[Provenance, str]] = {
    "fiber.length_m": (_REF, "11.4 m fiber used for the entanglement measurement"),
    "fiber.lambda_zgvd_nm": (_REF, "zero-GVD wavelength of SMF-28"),
    "fiber.slope_s0": (_REF, "dispersion slope 69.7 s/m^3 quoted for the GVD curve"),
    "fiber.gamma_per_w_km": (_CAL, "tuned so the 3 W phase-matched detuning is 77.4 GHz"),
    "fiber.raman_coeff": (_CAL, "one coefficient fitted to the 51 W*m and 230 W*m 3 kcps anchors"),
    "pump.lambda_p_nm": (_REF, "ITU grid channel 31 pump"),
    "pump.peak_power_w": (_REF, "3 W operating peak power"),
    "pump.pulse_duration_s": (_REF, "about 15 ps mode-locked pulses"),
    "pump.rep_rate_hz": (_REF, "18 MHz repetition rate"),
    "signal.detuning_ghz": (_REF, "400 GHz channel above the pump"),
    "signal.bandwidth_ghz": (_REF, "0.6 nm FWHM of a 100-GHz DWDM channel"),
    "signal.transmittance": (_REF, "about 60 % transmission per photon"),
    "idler.detuning_ghz": (_REF, "400 GHz channel below the pump"),
    "idler.bandwidth_ghz": (_REF, "0.6 nm FWHM of a 100-GHz DWDM channel"),
    "idler.transmittance": (_REF, "about 60 % transmission per photon"),
    "detector_s.efficiency": (_REF, "InGaAs gated detector, 5 %"),
    "detector_s.gate_width_s": (_REF, "3.1 ns gate"),
    "detector_s.dead_time_s": (_REF, "10 us dead time"),
    "detector_s.jitter_fwhm_s": (_INV, "spreads the zero-delay peak over a few TCSPC bins"),
    "detector_s.dark_prob_per_gate": (_INV, "dark counts are not quantified; off by default"),
    "detector_i.efficiency": (_REF, "InGaAs gated detector, 5 %"),
    "detector_i.gate_width_s": (_REF, "3.1 ns gate"),
    "detector_i.dead_time_s": (_REF, "10 us dead time"),
    "detector_i.jitter_fwhm_s": (_INV, "spreads the zero-delay peak over a few TCSPC bins"),
    "detector_i.dark_prob_per_gate": (_INV, "dark counts are not quantified; off by default"),
    "run.duration_s": (_REF, "600 s accumulation per point"),
    "run.seed": (_INV, "master seed"),
    "run.coincidence_window_s": (_REF, "coincidence window about 3 ns"),
    "run.bin_width_s": (_REF, "176 ps TCSPC time resolution"),
    "run.segment_s": (_INV, "independent simulation slice, >= 1000 dead times"),
    "run.side_windows": (_REF, "accidental peaks at 55.56 ns and 111 ns"),
    "run.workers": (_INV, "thread pool size"),
    "run.saturation_cps": (_REF, "singles kept under 10 000 counts per second"),
    "logging.level": (_INV, "console log level"),
    "logging.file": (_INV, "no log file unless set"),
}
