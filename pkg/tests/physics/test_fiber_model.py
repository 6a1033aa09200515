import math

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from core.enums import BetaMethod
from core.exceptions import DomainError
from core.units import beta2_to_ps2_per_km
from plugins.physics.fiber_model import (
    beta2_from_exact_k,
    beta_n,
    dispersion_curve,
    dispersion_D,
    dispersion_slope,
    group_delay_offset,
    k_mismatch_exact,
)

PUMP_NM = 1552.52


def test_dispersion_at_pump(fiber):
    assert dispersion_D(PUMP_NM, fiber) == pytest.approx(13.34, abs=0.01)


def test_dispersion_near_zero_gvd(fiber):
    assert dispersion_D(fiber.lambda_zgvd_nm, fiber) == pytest.approx(0.0, abs=1e-12)
    assert dispersion_D(1320.0, fiber) == pytest.approx(0.68, abs=0.02)


def test_dispersion_curve_matches_pointwise(fiber):
    grid = [1200.0, 1310.0, 1450.0, 1552.52, 1700.0]
    curve = dispersion_curve(grid, fiber)
    for lam, value in zip(grid, curve):
        assert value == pytest.approx(dispersion_D(lam, fiber), rel=1e-12, abs=1e-12)


def test_beta2_at_pump(fiber):
    b2 = beta_n(PUMP_NM, 2, fiber)
    assert beta2_to_ps2_per_km(b2) == pytest.approx(-17.07, rel=2e-3)


def test_beta3_and_beta4_at_pump(fiber):
    assert beta_n(PUMP_NM, 3, fiber) == pytest.approx(1.0e-40, rel=0.02)
    assert beta_n(PUMP_NM, 4, fiber) == pytest.approx(-2.84e-55, rel=0.02)


@pytest.mark.parametrize("order", [3, 4])
def test_finite_difference_agrees_with_closed_form(fiber, order):
    analytic = beta_n(PUMP_NM, order, fiber, BetaMethod.ANALYTIC)
    numeric = beta_n(PUMP_NM, order, fiber, BetaMethod.FINITE_DIFFERENCE)
    assert numeric == pytest.approx(analytic, rel=1e-3)


def test_integrated_k_reproduces_beta2(fiber):
    assert beta2_from_exact_k(PUMP_NM, fiber) == pytest.approx(beta_n(PUMP_NM, 2, fiber), rel=1e-3)


def test_exact_mismatch_vanishes_at_zero_offset(fiber):
    assert k_mismatch_exact(0.0, PUMP_NM, fiber) == 0.0


def test_group_delay_offset_is_zero_at_reference(fiber):
    assert group_delay_offset(PUMP_NM, PUMP_NM, fiber) == 0.0
    # beta1 grows with wavelength wherever D > 0
    assert group_delay_offset(1600.0, PUMP_NM, fiber) > 0.0


@pytest.mark.parametrize("lam", [999.0, 2000.5, math.nan])
def test_outside_window_raises(fiber, lam):
    with pytest.raises(DomainError):
        dispersion_D(lam, fiber)


def test_unsupported_order_raises(fiber):
    with pytest.raises(DomainError, match="n=5"):
        beta_n(PUMP_NM, 5, fiber)


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(lam=st.floats(min_value=1000.0, max_value=2000.0))
def test_dispersion_sign_follows_zero_gvd(fiber, lam):
    d = dispersion_D(lam, fiber)
    if lam > fiber.lambda_zgvd_nm + 1e-6:
        assert d > 0
    elif lam < fiber.lambda_zgvd_nm - 1e-6:
        assert d < 0
    assert dispersion_slope(lam, fiber) > 0
