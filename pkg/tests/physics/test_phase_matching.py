import math

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from core.enums import DeltaKMode
from core.exceptions import DomainError, PhaseMatchingError
from core.units import detuning_to_wavelength_offset_nm
from plugins.physics.phase_matching import (
    DetuningGrid,
    delta_k,
    delta_k_curve,
    phase_matched_detuning,
    spm_term,
)


def test_spm_term(pump, fiber):
    assert spm_term(pump, fiber) == pytest.approx(4.02e-3, rel=1e-9)


def test_phase_matched_detuning_at_3w(pump, fiber):
    root = phase_matched_detuning(pump, fiber)
    assert root == pytest.approx(77.3, abs=0.5)
    assert float(delta_k(root, pump, fiber)) == pytest.approx(0.0, abs=1e-7)
    # about 0.62 nm from the pump
    assert detuning_to_wavelength_offset_nm(root, pump.lambda_p_nm) == pytest.approx(0.62, abs=0.01)


def test_root_scales_with_square_root_of_power(pump, fiber):
    at_3w = phase_matched_detuning(pump, fiber)
    at_12w = phase_matched_detuning(pump.model_copy(update={"peak_power_w": 12.0}), fiber)
    assert at_12w == pytest.approx(2.0 * at_3w, rel=0.01)


def test_delta_k_at_400ghz(pump, fiber):
    assert delta_k(400.0, pump, fiber) == pytest.approx(0.1038, rel=2e-3)


def test_delta_k_is_even_and_vectorized(pump, fiber):
    nu = np.array([-800.0, -400.0, 0.0, 400.0, 800.0])
    values = delta_k(nu, pump, fiber)
    assert isinstance(values, np.ndarray)
    np.testing.assert_array_equal(values, values[::-1])
    assert values[2] == pytest.approx(-spm_term(pump, fiber))


def test_delta_k_without_spm_vanishes_at_pump(pump, fiber):
    assert delta_k(0.0, pump, fiber, include_spm=False) == 0.0


def test_exact_mode_tracks_truncated_expansion(pump, fiber):
    for nu in (100.0, 400.0, 1000.0):
        truncated = delta_k(nu, pump, fiber, include_spm=False)
        exact = delta_k(nu, pump, fiber, include_spm=False, mode=DeltaKMode.EXACT)
        assert exact == pytest.approx(truncated, rel=1e-3)


def test_exact_mode_root(pump, fiber):
    exact = phase_matched_detuning(pump, fiber, mode=DeltaKMode.EXACT)
    assert exact == pytest.approx(phase_matched_detuning(pump, fiber), rel=1e-3)


def test_normal_dispersion_pump_has_no_phase_matching(pump, fiber):
    with pytest.raises(PhaseMatchingError, match="normal-dispersion"):
        phase_matched_detuning(pump.model_copy(update={"lambda_p_nm": 1300.0}), fiber)


def test_detuning_outside_window_raises(pump, fiber):
    with pytest.raises(DomainError):
        delta_k(5001.0, pump, fiber)


def test_grid_points_and_validation(pump, fiber):
    grid = DetuningGrid(0.0, 10.0, 2.5)
    np.testing.assert_allclose(grid.points, [0.0, 2.5, 5.0, 7.5, 10.0])
    nu, dk = delta_k_curve(grid, pump, fiber)
    assert nu.shape == dk.shape == (5,)
    with pytest.raises(DomainError):
        DetuningGrid(0.0, 10.0, 0.0)
    with pytest.raises(DomainError):
        DetuningGrid(10.0, 0.0, 1.0)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(power=st.floats(min_value=0.5, max_value=20.0))
def test_root_follows_square_root_law(pump, fiber, power):
    reference = phase_matched_detuning(pump, fiber)
    root = phase_matched_detuning(pump.model_copy(update={"peak_power_w": power}), fiber)
    assert root == pytest.approx(reference * math.sqrt(power / pump.peak_power_w), rel=0.01)
