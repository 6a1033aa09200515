import math

import numpy as np
import pytest

from core.exceptions import CarUndefinedError, DomainError, EnergyConservationError, ModelError
from plugins.physics.analysis import fit_loglog_slope
from plugins.physics.coincidence_sim import (
    CoincidenceResult,
    accidental_rate_from_singles,
    blocked_gates,
    calibrate_raman_coeff,
    car,
    detection_efficiency,
    dwdm_channel_pair,
    expected_rates,
    expected_rates_for,
    power_for_singles,
    simulate,
    true_coincidences,
)

LENGTHS_M = (3.8, 11.4, 31.5, 308.0)


def _result(c_c: int, c_a: float) -> CoincidenceResult:
    return CoincidenceResult(
        histogram=np.zeros(3, dtype=np.int64),
        bin_centers_s=np.zeros(3),
        singles_s=0,
        singles_i=0,
        c_c=c_c,
        c_a=c_a,
        side_window_counts=(0, 0),
        duration_s=1.0,
        seed=0,
        rep_rate_hz=18e6,
        window_s=3e-9,
    )


def _operating_point(config, length_m):
    fb = config.fiber.model_copy(update={"length_m": length_m})
    power = power_for_singles(3000.0, config.pump, fb, config.signal, config.idler, config.detector_s, config.detector_i)
    pump = config.pump.model_copy(update={"peak_power_w": power})
    return power, expected_rates(pump, fb, config.signal, config.idler, config.detector_s, config.detector_i, warn=False)


def test_detector_helpers(config):
    assert blocked_gates(config.detector_s, config.pump.rep_rate_hz) == 179
    assert detection_efficiency(config.signal, config.detector_s) == pytest.approx(0.03)
    assert accidental_rate_from_singles(3000.0, 3000.0, 18e6) == pytest.approx(0.5)


def test_dwdm_channels():
    signal, idler = dwdm_channel_pair(400.0)
    assert (signal.detuning_ghz, idler.detuning_ghz) == (400.0, -400.0)
    assert signal.bandwidth_ghz == 75.0 and signal.transmittance == 0.6
    with pytest.raises(DomainError):
        dwdm_channel_pair(250.0)


def test_channels_must_mirror_about_pump(config):
    idler = config.idler.model_copy(update={"detuning_ghz": -500.0})
    with pytest.raises(EnergyConservationError, match="energy-conservation mismatch"):
        expected_rates(config.pump, config.fiber, config.signal, idler, config.detector_s, config.detector_i)


def test_closed_form_rates_at_defaults(config):
    report = expected_rates_for(config, warn=False)
    assert report.eta_s == pytest.approx(0.03)
    # mu_p L^2 P^2 eta^2 with mu_p about 0.888 of 9.09
    assert report.true_rate == pytest.approx(8.07 * 129.96 * 9.0 * 9e-4, rel=0.01)
    assert report.coincidence_rate > report.accidental_rate > 0
    assert report.car == pytest.approx(report.coincidence_rate / report.accidental_rate)


def test_dead_time_loss_at_3kcps(config):
    _, report = _operating_point(config, 11.4)
    assert report.singles_s == pytest.approx(3000.0, rel=1e-6)
    assert 1.0 - report.arming_s == pytest.approx(0.029, abs=0.003)


def test_raman_calibration(config, datasheet_fiber):
    reference = calibrate_raman_coeff(config.pump, config.fiber, config.signal, config.detector_s)
    assert reference.coefficient == pytest.approx(3.7e-7, rel=0.05)
    residuals = {length: residual for length, _, _, residual in reference.anchors}
    assert set(residuals) == {3.8, 308.0}
    # the noise-dominated anchor pins the coefficient; the short fiber falls below target
    assert abs(residuals[308.0]) < 0.15
    assert residuals[3.8] < 0.0

    datasheet = calibrate_raman_coeff(config.pump, datasheet_fiber, config.signal, config.detector_s)
    assert datasheet.coefficient == pytest.approx(3.3e-7, rel=0.05)


def test_operating_points_and_car(config):
    power_short, short = _operating_point(config, 3.8)
    power_long, long = _operating_point(config, 308.0)
    assert power_short == pytest.approx(21.8, rel=0.05)
    assert power_long == pytest.approx(0.665, rel=0.05)
    assert short.car == pytest.approx(105.0, rel=0.15)
    assert long.car == pytest.approx(2.1, rel=0.15)
    assert _operating_point(config, 11.4)[1].car == pytest.approx(107.0, rel=0.15)


def test_car_falls_with_length_at_equal_singles(config):
    cars = [_operating_point(config, length)[1].car for length in LENGTHS_M]
    assert all(a > b for a, b in zip(cars, cars[1:]))


def test_true_rate_scaling_with_length(config):
    points = []
    for length in (3.8, 11.4):
        fb = config.fiber.model_copy(update={"length_m": length})
        report = expected_rates(config.pump, fb, config.signal, config.idler, config.detector_s, config.detector_i, warn=False)
        points.append((length, report.true_rate))
    slope = math.log(points[1][1] / points[0][1]) / math.log(points[1][0] / points[0][0])
    assert slope == pytest.approx(1.90, abs=0.02)


def test_unreachable_singles_target(config):
    with pytest.raises(ModelError):
        power_for_singles(1e7, config.pump, config.fiber, config.signal, config.idler, config.detector_s, config.detector_i)


def test_car_metrics():
    assert car(_result(200, 2.0)) == 100.0
    with pytest.raises(CarUndefinedError, match="no accidentals"):
        car(_result(5, 0.0))
    net = true_coincidences(_result(3, 4.5))
    assert net.counts == 0.0 and net.clipped
    assert true_coincidences(_result(10, 4.0)) == (6.0, False)


# ----------------------------------------------------------------- Monte Carlo


@pytest.fixture
def bright(config):
    """10 W on 11.4 m: about 4.6 kcps singles and CAR near 80."""
    return config.model_copy(update={"pump": config.pump.model_copy(update={"peak_power_w": 10.0})})


def _run(cfg, duration_s=20.0, seed=7, workers=1):
    return simulate(cfg.pump, cfg.fiber, cfg.channels, cfg.detectors, duration_s, seed, workers=workers)


def _within(measured, expected):
    return abs(measured - expected) <= 5.0 * math.sqrt(expected) + 0.02 * expected


def test_simulation_agrees_with_closed_form(bright):
    result = _run(bright)
    report = expected_rates_for(bright, warn=False)
    assert _within(result.singles_s, report.singles_s * 20.0)
    assert _within(result.singles_i, report.singles_i * 20.0)
    assert _within(result.c_c, report.coincidence_rate * 20.0)
    assert _within(result.c_a * 4, report.accidental_rate * 20.0 * 4)
    assert car(result) == pytest.approx(report.car, rel=0.3)


def test_histogram_shows_pulse_train(bright):
    result = _run(bright, duration_s=5.0)
    period = 1.0 / bright.pump.rep_rate_hz
    centers = result.bin_centers_s
    assert centers[0] == pytest.approx(-centers[-1])
    assert abs(centers[int(np.argmax(result.histogram))]) < 1e-9
    near_side = result.histogram[np.abs(np.abs(centers) - period) < 1.5e-9].sum()
    assert near_side > 0
    assert result.histogram.sum() >= result.c_c


def test_simulation_is_reproducible(bright):
    first = _run(bright, duration_s=4.0, seed=11)
    second = _run(bright, duration_s=4.0, seed=11)
    np.testing.assert_array_equal(first.histogram, second.histogram)
    assert first.summary() == second.summary()
    assert _run(bright, duration_s=4.0, seed=12).summary() != first.summary()


def test_worker_count_does_not_change_result(bright):
    serial = _run(bright, duration_s=6.0, seed=3, workers=1)
    threaded = _run(bright, duration_s=6.0, seed=3, workers=4)
    np.testing.assert_array_equal(serial.histogram, threaded.histogram)
    assert serial.summary() == threaded.summary()


def test_dark_clicks_raise_accidentals(bright):
    detector = bright.detector_s.model_copy(update={"dark_prob_per_gate": 1e-4})
    dark = bright.model_copy(update={"detector_s": detector, "detector_i": detector})
    quiet = _run(bright, duration_s=5.0)
    noisy = _run(dark, duration_s=5.0)
    assert noisy.singles_s > quiet.singles_s
    assert noisy.c_a > quiet.c_a


def test_invalid_duration(bright):
    with pytest.raises(DomainError):
        _run(bright, duration_s=0.0)


def test_side_windows_must_be_positive(bright):
    with pytest.raises(DomainError, match="side_windows"):
        simulate(bright.pump, bright.fiber, bright.channels, bright.detectors, 1.0, 0, side_windows=0)


def test_histogram_peaks_sit_on_the_pulse_train(bright):
    result = _run(bright, duration_s=20.0)
    period = 1.0 / bright.pump.rep_rate_hz
    bin_width = bright.run.bin_width_s
    centers, counts = result.bin_centers_s, result.histogram

    for k in range(-2, 3):
        near = np.abs(centers - k * period) < period / 2.0
        assert counts[near].sum() > 0
        centroid = np.average(centers[near], weights=counts[near])
        assert abs(centroid - k * period) < bin_width

    # every coincidence lies inside the overlap of two gates around a pulse delay
    occupied = centers[counts > 0]
    offsets = np.abs(occupied[:, None] - period * np.arange(-2, 3)[None, :]).min(axis=1)
    assert offsets.max() <= bright.detector_s.gate_width_s + bin_width


def test_dead_time_suppresses_singles(bright):
    blind = bright.detector_s
    open_detector = blind.model_copy(update={"dead_time_s": 0.0})
    always_armed = bright.model_copy(update={"detector_s": open_detector, "detector_i": open_detector})

    assert expected_rates_for(always_armed, warn=False).singles_s > expected_rates_for(bright, warn=False).singles_s
    with_dead_time = _run(bright, duration_s=5.0, seed=21)
    without = _run(always_armed, duration_s=5.0, seed=21)
    assert without.singles_s > with_dead_time.singles_s
    assert without.singles_i > with_dead_time.singles_i


def _agrees(samples, expected, poisson_variance):
    """Sample mean within 3 standard errors; the error is floored at the Poisson value."""
    samples = np.asarray(samples, dtype=float)
    spread = max(float(np.std(samples, ddof=1)), math.sqrt(poisson_variance))
    return abs(samples.mean() - expected) <= 3.0 * spread / math.sqrt(samples.size)


@pytest.mark.slow
@pytest.mark.parametrize("length_m", LENGTHS_M)
def test_simulation_matches_closed_form_over_seeds(config, length_m):
    cfg = config.model_copy(update={"fiber": config.fiber.model_copy(update={"length_m": length_m})})
    duration = 60.0
    report = expected_rates_for(cfg, warn=False)
    runs = [_run(cfg, duration_s=duration, seed=seed, workers=4) for seed in range(20)]
    windows = 2 * cfg.run.side_windows

    singles = report.singles_s * duration
    coincidences = report.coincidence_rate * duration
    accidentals = report.accidental_rate * duration
    assert _agrees([r.singles_s for r in runs], singles, singles)
    assert _agrees([r.singles_i for r in runs], report.singles_i * duration, report.singles_i * duration)
    assert _agrees([r.c_c for r in runs], coincidences, coincidences)
    assert _agrees([r.c_a for r in runs], accidentals, accidentals / windows)


@pytest.mark.slow
@pytest.mark.parametrize(
    "length_m, powers_w",
    [
        (3.8, np.geomspace(4.0, 16.0, 5)),
        (11.4, np.geomspace(1.5, 6.0, 5)),
        (31.5, np.geomspace(0.75, 3.0, 5)),
    ],
)
def test_simulated_true_coincidences_grow_as_power_squared(config, length_m, powers_w):
    fb = config.fiber.model_copy(update={"length_m": length_m})
    points = []
    for power, seed in zip(powers_w, range(100, 105)):
        cfg = config.model_copy(update={"fiber": fb, "pump": config.pump.model_copy(update={"peak_power_w": float(power)})})
        points.append((float(power), true_coincidences(_run(cfg, duration_s=300.0, seed=seed, workers=4)).counts))
    assert fit_loglog_slope(points).slope == pytest.approx(2.0, abs=0.1)
