from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from carleman.quasianalytic import (
    LOG_ZERO,
    propagation_plan,
    taylor_vanishing_bound,
    vanishing_radius,
)


def test_vanishing_radius_unit_constant() -> None:
    assert vanishing_radius(1.0) == pytest.approx(1.0 / math.e, rel=1e-15)


def test_vanishing_radius_scales_inversely() -> None:
    assert vanishing_radius(2.0) == pytest.approx(vanishing_radius(1.0) / 2.0)


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_vanishing_radius_rejects_nonpositive(bad: float) -> None:
    with pytest.raises(ValueError):
        vanishing_radius(bad)


def test_taylor_bound_zero_on_radius_boundary() -> None:
    # c e dist == 1 exactly at the radius, so the log bound is 0 for all d.
    r = vanishing_radius(1.0)
    assert taylor_vanishing_bound(1.0, r, 7) == pytest.approx(0.0, abs=1e-14)


def test_taylor_bound_decays_inside_radius() -> None:
    dist = 0.5 * vanishing_radius(1.0)
    b3 = taylor_vanishing_bound(1.0, dist, 3)
    b9 = taylor_vanishing_bound(1.0, dist, 9)
    assert b3 < 0.0
    assert b9 == pytest.approx(3.0 * b3)
    assert b9 < b3


def test_taylor_bound_at_the_flat_point_is_sentinel() -> None:
    assert taylor_vanishing_bound(1.0, 0.0, 5) == LOG_ZERO


def test_taylor_bound_input_validation() -> None:
    with pytest.raises(ValueError):
        taylor_vanishing_bound(1.0, -0.1, 3)
    with pytest.raises(ValueError):
        taylor_vanishing_bound(1.0, 0.1, 0)
    with pytest.raises(ValueError):
        taylor_vanishing_bound(0.0, 0.1, 3)


def test_unit_interval_plan_with_unit_constant() -> None:
    plan = propagation_plan(0.0, 1.0, 1.0)
    assert plan.radius == pytest.approx(1.0 / math.e)
    assert plan.steps == 6  # ceil(2e)
    assert plan.c == 1.0


def test_plan_rejects_empty_interval() -> None:
    with pytest.raises(ValueError):
        propagation_plan(1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        propagation_plan(2.0, 1.0, 1.0)


@given(
    st.floats(-10.0, 10.0),
    st.floats(1e-3, 20.0),
    st.floats(1e-2, 1e3),
)
def test_plan_always_covers_the_interval(a: float, width: float, c: float) -> None:
    plan = propagation_plan(a, a + width, c)
    assert plan.steps >= 1
    covered = plan.steps * (plan.radius / 2.0)
    assert covered >= ((a + width) - a) * (1.0 - 1e-12)
