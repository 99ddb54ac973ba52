from __future__ import annotations

import math
from dataclasses import replace

import pytest

from carleman.errors import HypothesisFailure, LogRangeError
from carleman.extremal import (
    ExtremalSeries,
    build_extremal,
    check_midpoint_lower,
    check_upper_bound,
    eval_derivative,
    finite_difference_oracle,
    log_tail_bound,
)
from carleman.logdomain import LOG2
from carleman.sequences import FamilySpec, LogSequence, build_sequence

#: All-ones weight: N_k = 1, ratios m_k = 1, closed forms everywhere.
FLAT = build_extremal(LogSequence((0.0,) * 25), center=0.5)


def test_build_requires_nondecreasing_ratios() -> None:
    with pytest.raises(HypothesisFailure) as err:
        build_extremal(LogSequence((0.0, 2.0, 3.0)))
    assert err.value.condition == "log-convexity"


def test_build_k_trunc_bounds() -> None:
    seq = build_sequence(FamilySpec(kind="gevrey", s=1.0), 10)
    with pytest.raises(ValueError):
        build_extremal(seq, k_trunc=1)
    with pytest.raises(ValueError):
        build_extremal(seq, k_trunc=11)
    assert build_extremal(seq, k_trunc=5).k_trunc == 5


def test_series_shape_validation() -> None:
    with pytest.raises(ValueError, match="ratio entries"):
        ExtremalSeries(
            n_logs=(0.0, 0.0, 0.0), log_m=(0.0,), k_trunc=2, center=0.5
        )
    with pytest.raises(ValueError, match="sequence entries"):
        ExtremalSeries(
            n_logs=(0.0, 0.0), log_m=(0.0, 0.0), k_trunc=2, center=0.5
        )
    with pytest.raises(ValueError, match="half width"):
        ExtremalSeries(
            n_logs=(0.0, 0.0, 0.0), log_m=(0.0, 0.0), k_trunc=2,
            center=0.5, half_width=0.0,
        )


# ------------------------------------------------------- flat closed forms


def test_flat_series_value_at_center() -> None:
    # g(c) = sum 2^-k = 2 - 2^-23, every phase factor exactly 1.
    out = eval_derivative(FLAT, 0.5, 0)
    assert out.value == pytest.approx(2.0 - 2.0**-23, rel=1e-15)
    assert out.terms_used == 24


def test_flat_series_slope_at_center() -> None:
    # g'(c) = sum 2^(1-k) * (cos + sin)(pi/2) = 4 - 2^-22.
    out = eval_derivative(FLAT, 0.5, 1)
    assert out.value == pytest.approx(4.0 - 2.0**-22, rel=1e-12)


def test_flat_series_midpoint_witnesses() -> None:
    w0 = check_midpoint_lower(FLAT, 0)
    assert w0.holds
    assert w0.log_value == pytest.approx(math.log(2.0 - 2.0**-23), rel=1e-12)
    assert w0.log_lower == 0.0
    signs = [check_midpoint_lower(FLAT, n).sign for n in range(6)]
    assert signs == [1, 1, -1, -1, 1, 1]


def test_flat_series_upper_bounds_hold() -> None:
    for n in (0, 1, 5, 12):
        b = check_upper_bound(FLAT, n)
        assert b.holds
        assert b.log_bound == pytest.approx((n + 2) * LOG2)
        assert b.log_measured <= b.log_bound


def test_tail_bound_formula() -> None:
    assert log_tail_bound(FLAT, 20) == pytest.approx(-2.0 * LOG2)
    assert log_tail_bound(FLAT, 24) == pytest.approx(2.0 * LOG2)
    gev = build_extremal(build_sequence(FamilySpec(kind="gevrey", s=1.0), 12))
    assert log_tail_bound(gev, 5) == pytest.approx(
        5.0 * math.log(5.0) + (5 - 12 + 2) * LOG2
    )


def test_order_outside_prefix_rejected() -> None:
    with pytest.raises(ValueError):
        eval_derivative(FLAT, 0.5, 25)
    with pytest.raises(ValueError):
        check_midpoint_lower(FLAT, -1)
    with pytest.raises(ValueError):
        check_upper_bound(FLAT, 0, grid_size=1)


def test_gevrey_series_holds_both_bounds() -> None:
    series = build_extremal(build_sequence(FamilySpec(kind="gevrey", s=1.0), 20))
    for n in range(9):
        assert check_midpoint_lower(series, n).holds
        assert check_upper_bound(series, n).holds


def test_scaling_the_sequence_scales_the_series() -> None:
    # N -> 3N leaves the ratios alone and multiplies g^(n) pointwise by 3.
    shift = math.log(3.0)
    scaled = replace(
        FLAT, n_logs=tuple(v + shift for v in FLAT.n_logs)
    )
    for x in (0.1, 0.5, 0.83):
        for n in (0, 1, 2):
            base = eval_derivative(FLAT, x, n).value
            big = eval_derivative(scaled, x, n).value
            assert big == pytest.approx(3.0 * base, rel=1e-12)


# ------------------------------------------------------------- range edges


def test_oversized_terms_raise_out_of_range() -> None:
    s = ExtremalSeries(
        n_logs=(0.0, 800.0, 1600.0), log_m=(800.0, 800.0),
        k_trunc=2, center=0.5,
    )
    with pytest.raises(LogRangeError, match="does not fit"):
        eval_derivative(s, 0.5, 1)


def test_huge_frequencies_only_resolve_at_the_center() -> None:
    s = ExtremalSeries(
        n_logs=(0.0, 800.0, 1600.0), log_m=(800.0, 800.0),
        k_trunc=2, center=0.5,
    )
    # At the center the phase collapses to n pi/2 and order 0 is fine ...
    out = eval_derivative(s, 0.5, 0)
    assert math.isfinite(out.value)
    # ... but off-center those phases cannot be resolved.
    with pytest.raises(LogRangeError, match="off-center"):
        eval_derivative(s, 0.6, 0)


def test_underflowing_terms_are_skipped_not_counted() -> None:
    s = ExtremalSeries(
        n_logs=(0.0, 0.0, 0.0, 800.0), log_m=(0.0, 0.0, 800.0),
        k_trunc=3, center=0.5,
    )
    # Term k = 2 sits at log 0 - 2 (ln 2 + 800), far below double range;
    # it contributes an exact zero and is not counted.
    out = eval_derivative(s, 0.7, 0)
    assert out.terms_used == 2
    assert math.isfinite(out.value)


# -------------------------------------------------------------- fd oracle


def test_fd_oracle_rejects_bad_orders_and_steps() -> None:
    with pytest.raises(ValueError):
        finite_difference_oracle(math.sin, 0.0, 5)
    with pytest.raises(ValueError):
        finite_difference_oracle(math.sin, 0.0, 1, h=0.0)


def test_fd_oracle_on_sine() -> None:
    x = 0.3
    expects = {
        1: math.cos(x),
        2: -math.sin(x),
        3: -math.cos(x),
        4: math.sin(x),
    }
    tols = {1: 1e-8, 2: 1e-6, 3: 1e-5, 4: 1e-3}
    for order, want in expects.items():
        got = finite_difference_oracle(math.sin, x, order)
        assert got == pytest.approx(want, rel=tols[order])


def test_fd_oracle_exact_on_low_degree_polynomials() -> None:
    f = lambda x: x**3  # noqa: E731
    assert finite_difference_oracle(f, 1.3, 1) == pytest.approx(
        3.0 * 1.3**2, rel=1e-9
    )
    assert finite_difference_oracle(f, 1.3, 2) == pytest.approx(
        6.0 * 1.3, rel=1e-6
    )


def test_fd_oracle_matches_series_evaluation() -> None:
    fn = lambda x: eval_derivative(FLAT, x, 0).value  # noqa: E731
    for n, h in ((1, 1e-5), (2, 1e-4)):
        exact = eval_derivative(FLAT, 0.37, n).value
        approx = finite_difference_oracle(fn, 0.37, n, h=h)
        assert approx == pytest.approx(exact, rel=1e-5)
