import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from core.enums import HwhmReference
from core.exceptions import DomainError, WindowTooNarrowError
from plugins.physics.pair_spectrum import (
    half_max_abscissa,
    hwhm_bandwidth,
    mu_p,
    mu_p_peak,
    pgr,
    sinc2,
    spectrum_sweep,
)
from plugins.physics.phase_matching import DetuningGrid, phase_matched_detuning

BANDWIDTH_GHZ = 75.0


def test_sinc2_and_half_max():
    assert sinc2(0.0) == 1.0
    assert sinc2(np.pi) == pytest.approx(0.0, abs=1e-30)
    assert half_max_abscissa() == pytest.approx(1.3916, abs=1e-4)
    assert sinc2(half_max_abscissa()) == pytest.approx(0.5, abs=1e-12)


def test_peak_coefficient(pump, fiber):
    assert mu_p_peak(pump, fiber, BANDWIDTH_GHZ) == pytest.approx(9.09, rel=1e-3)
    with pytest.raises(DomainError):
        mu_p_peak(pump, fiber, 0.0)


def test_peak_reached_at_phase_matching(pump, fiber):
    root = phase_matched_detuning(pump, fiber)
    assert mu_p(root, pump, fiber, BANDWIDTH_GHZ) == pytest.approx(mu_p_peak(pump, fiber, BANDWIDTH_GHZ), rel=1e-9)


def test_mu_p_at_400ghz_for_11m(pump, fiber):
    ratio = mu_p(400.0, pump, fiber, BANDWIDTH_GHZ) / mu_p_peak(pump, fiber, BANDWIDTH_GHZ)
    assert ratio == pytest.approx(0.888, abs=2e-3)


def test_pair_generation_rate_at_phase_matching(pump, fiber):
    root = phase_matched_detuning(pump, fiber)
    assert pgr(root, pump, fiber, BANDWIDTH_GHZ) == pytest.approx(1.063e4, rel=2e-3)


@pytest.mark.parametrize("length_m, expected_ghz", [(3.8, 1045.0), (308.0, 139.0)])
def test_hwhm_bandwidth(pump, fiber, length_m, expected_ghz):
    fb = fiber.model_copy(update={"length_m": length_m})
    assert hwhm_bandwidth(pump, fb) == pytest.approx(expected_ghz, abs=3.0)


LENGTHS_M = (3.8, 5.8, 8.1, 11.4, 31.5, 55.5, 104.0, 308.0)


def test_hwhm_shrinks_with_length(pump, fiber):
    widths = [hwhm_bandwidth(pump, fiber.model_copy(update={"length_m": length})) for length in LENGTHS_M]
    assert all(a > b for a, b in zip(widths, widths[1:]))


def test_short_fiber_hwhm_ignores_pump_power(pump, fiber):
    """Up to 10 W the SPM shift is small against a 1 THz wide spectrum."""
    fb = fiber.model_copy(update={"length_m": 3.8})
    widths = [hwhm_bandwidth(pump.model_copy(update={"peak_power_w": power}), fb) for power in (1.0, 5.0, 10.0)]
    assert (max(widths) - min(widths)) / min(widths) < 0.05


def test_hwhm_from_peak(pump, fiber):
    # 308 m stays above half maximum down to the pump, so both readings agree
    fb = fiber.model_copy(update={"length_m": 308.0})
    assert hwhm_bandwidth(pump, fb, reference=HwhmReference.FROM_PEAK) == hwhm_bandwidth(pump, fb)

    fb = fiber.model_copy(update={"length_m": 2000.0})
    from_pump = hwhm_bandwidth(pump, fb)
    from_peak = hwhm_bandwidth(pump, fb, reference=HwhmReference.FROM_PEAK)
    assert 0.0 < from_peak < from_pump


def test_short_fiber_leaves_window(pump, fiber):
    with pytest.raises(WindowTooNarrowError, match="window too narrow"):
        hwhm_bandwidth(pump, fiber.model_copy(update={"length_m": 0.01}))


def test_long_fiber_separates_from_pump(pump, fiber):
    spectrum = spectrum_sweep(DetuningGrid(0.0, 1500.0, 1.0), pump, fiber.model_copy(update={"length_m": 308.0}), BANDWIDTH_GHZ)
    root = phase_matched_detuning(pump, fiber)
    assert np.any(np.abs(spectrum.local_maxima() - root) <= 1.0)


def test_short_fiber_has_flat_top(pump, fiber):
    fb = fiber.model_copy(update={"length_m": 3.8})
    spectrum = spectrum_sweep(DetuningGrid(0.0, 1500.0, 5.0), pump, fb, BANDWIDTH_GHZ)
    root = phase_matched_detuning(pump, fb)
    tail = spectrum.mu_p[spectrum.detuning_ghz >= root]
    assert np.all(np.diff(tail) <= 1e-12 * spectrum.peak_limit)


def test_second_lobe_on_datasheet_fiber(pump, datasheet_fiber):
    assert mu_p(1000.0, pump, datasheet_fiber, BANDWIDTH_GHZ) > mu_p(800.0, pump, datasheet_fiber, BANDWIDTH_GHZ)


def test_spectrum_accepts_explicit_detunings(pump, fiber):
    spectrum = spectrum_sweep([400.0, 800.0], pump, fiber, BANDWIDTH_GHZ)
    assert spectrum.mu_p.shape == (2,)
    assert np.all(spectrum.normalized() <= 1.0)


@settings(max_examples=50, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(nu=st.floats(min_value=-4000.0, max_value=4000.0), length=st.floats(min_value=0.5, max_value=1000.0))
def test_mu_p_bounded_and_even(pump, fiber, nu, length):
    fb = fiber.model_copy(update={"length_m": length})
    value = mu_p(nu, pump, fb, BANDWIDTH_GHZ)
    assert 0.0 <= value <= mu_p_peak(pump, fb, BANDWIDTH_GHZ) * (1 + 1e-12)
    assert value == mu_p(-nu, pump, fb, BANDWIDTH_GHZ)
