# models.py

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator


class _Spec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class FiberSpec(_Spec):
    """Single-mode fiber under test. Conventional units, converted in core.units."""

    length_m: float = Field(gt=0)
    lambda_zgvd_nm: float = Field(ge=1000, le=2000)
    # ps nm^-2 km^-1
    slope_s0: float = Field(gt=0)
    gamma_per_w_km: float = Field(gt=0)
    # noise photons per pulse per W(peak) per m per GHz of filter bandwidth
    raman_coeff: float = Field(ge=0)


class PumpSpec(_Spec):
    lambda_p_nm: float = Field(gt=0)
    peak_power_w: float = Field(gt=0)
    pulse_duration_s: float = Field(gt=0)
    rep_rate_hz: float = Field(gt=0)

    @model_validator(mode="after")
    def _duty_cycle_below_unity(self) -> "PumpSpec":
        if self.pulse_duration_s * self.rep_rate_hz >= 1.0:
            raise ValueError("duty cycle pulse_duration_s * rep_rate_hz must be below 1")
        return self


class ChannelSpec(_Spec):
    """Signal (+) or idler (-) filter channel relative to the pump."""

    detuning_ghz: float
    bandwidth_ghz: float = Field(gt=0)
    transmittance: float = Field(gt=0, le=1)

    @model_validator(mode="after")
    def _excludes_pump_line(self) -> "ChannelSpec":
        if abs(self.detuning_ghz) < self.bandwidth_ghz:
            raise ValueError("channel must exclude the pump line: |detuning_ghz| >= bandwidth_ghz")
        return self


class DetectorSpec(_Spec):
    efficiency: float = Field(gt=0, le=1)
    gate_width_s: float = Field(ge=0)
    dead_time_s: float = Field(ge=0)
    jitter_fwhm_s: float = Field(ge=0)
    dark_prob_per_gate: float = Field(default=0.0, ge=0, le=1)


class RunSpec(_Spec):
    duration_s: float = Field(gt=0)
    seed: int = Field(ge=0)
    coincidence_window_s: float = Field(gt=0)
    bin_width_s: float = Field(gt=0)
    segment_s: float = Field(gt=0)
    side_windows: int = Field(ge=1)
    workers: int = Field(ge=1)
    saturation_cps: float = Field(gt=0)


class LoggingConfig(_Spec):
    level: str = "INFO"
    file: str = ""


class ExperimentConfig(_Spec):
    version: str
    preset: str = ""
    fiber: FiberSpec
    pump: PumpSpec
    signal: ChannelSpec
    idler: ChannelSpec
    detector_s: DetectorSpec
    detector_i: DetectorSpec
    run: RunSpec
    logging: LoggingConfig = LoggingConfig()

    @property
    def channels(self) -> tuple[ChannelSpec, ChannelSpec]:
        return self.signal, self.idler

    @property
    def detectors(self) -> tuple[DetectorSpec, DetectorSpec]:
        return self.detector_s, self.detector_i

    @property
    def coincidence_window_s(self) -> float:
        return self.run.coincidence_window_s

    @property
    def duration_s(self) -> float:
        return self.run.duration_s

    @property
    def seed(self) -> int:
        return self.run.seed
