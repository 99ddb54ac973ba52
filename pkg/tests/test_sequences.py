from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from carleman.sequences import (
    ConditionReport,
    FamilySpec,
    LogSequence,
    build_sequence,
    check_condition_A,
    check_log_convex,
    fit_analytic_constant,
    quasianalytic_diagnostic,
    ratios,
)

GEVREY1 = FamilySpec(kind="gevrey", s=1.0)
GEVREY2 = FamilySpec(kind="gevrey", s=2.0)
NLOGN = FamilySpec(kind="nlogn")


# ------------------------------------------------------------- builders


def test_gevrey_logs_are_sn_log_n() -> None:
    seq = build_sequence(GEVREY2, 5)
    assert seq.logs[0] == 0.0
    assert seq.logs[1] == 0.0  # 1**2 = 1
    assert seq.logs[3] == pytest.approx(6.0 * math.log(3.0), rel=1e-15)
    assert seq.logs[5] == pytest.approx(10.0 * math.log(5.0), rel=1e-15)


def test_nlogn_logs_start_flat() -> None:
    seq = build_sequence(NLOGN, 4)
    assert seq.logs[0] == 0.0
    assert seq.logs[1] == 0.0
    assert seq.logs[2] == pytest.approx(2.0 * math.log(2.0 * math.log(2.0)))
    assert seq.logs[3] == pytest.approx(3.0 * math.log(3.0 * math.log(3.0)))


def test_explicit_logs_are_normalized() -> None:
    spec = FamilySpec(kind="explicit", logs=(2.0, 3.0, 5.0, 9.0))
    seq = build_sequence(spec, 3)
    assert seq.logs == (0.0, 1.0, 3.0, 7.0)


def test_explicit_too_short_rejected() -> None:
    spec = FamilySpec(kind="explicit", logs=(0.0, 1.0, 2.0))
    with pytest.raises(ValueError, match="entries"):
        build_sequence(spec, 5)


def test_build_rejects_tiny_n_max() -> None:
    with pytest.raises(ValueError, match="n_max"):
        build_sequence(GEVREY1, 1)


def test_family_spec_validation() -> None:
    with pytest.raises(ValueError, match="kind"):
        FamilySpec(kind="mystery")
    with pytest.raises(ValueError, match="s >= 1"):
        FamilySpec(kind="gevrey", s=0.5)
    with pytest.raises(ValueError, match="finite index"):
        FamilySpec(kind="gevrey")
    with pytest.raises(ValueError, match="requires logs"):
        FamilySpec(kind="explicit")
    with pytest.raises(ValueError, match="finite"):
        FamilySpec(kind="explicit", logs=(0.0, math.inf))


def test_log_sequence_validation() -> None:
    with pytest.raises(ValueError, match="n_max >= 2"):
        LogSequence((0.0, 1.0))
    with pytest.raises(ValueError, match="logs\\[0\\]"):
        LogSequence((1.0, 2.0, 3.0))
    with pytest.raises(ValueError, match="finite"):
        LogSequence((0.0, math.nan, 3.0))


def test_ratios_of_gevrey1() -> None:
    seq = build_sequence(GEVREY1, 4)
    rs = ratios(seq)
    assert rs[0] == 0.0
    assert rs[1] == pytest.approx(2.0 * math.log(2.0))
    assert rs[3] == pytest.approx(4.0 * math.log(4.0) - 3.0 * math.log(3.0))
    assert len(rs) == 4


# ------------------------------------------------------------- checkers


def test_gevrey_is_log_convex() -> None:
    r = check_log_convex(build_sequence(GEVREY1, 100))
    assert r.holds
    assert r.first_violation is None
    assert r.margin >= 0.0
    assert r.label == "log-convexity"


def test_log_convex_violation_located() -> None:
    # ratios 1.0 then 0.5: dips at n = 1.
    seq = LogSequence((0.0, 1.0, 1.5, 3.0))
    r = check_log_convex(seq)
    assert not r.holds
    assert r.first_violation == (1,)
    assert r.margin == pytest.approx(-0.5)


def test_condition_a_gevrey_above_one() -> None:
    r = check_condition_A(build_sequence(GEVREY1, 60), m0=1.0)
    assert r.holds
    assert r.label == "(A)"
    assert r.margin >= 0.0


def test_condition_a_nlogn_fails_low_then_passes_high() -> None:
    seq = build_sequence(NLOGN, 60)
    low = check_condition_A(seq, m0=1.0)
    assert not low.holds
    assert low.first_violation == (2, 3, 2)
    assert low.margin < 0.0

    high = check_condition_A(seq, m0=math.e**2)
    assert high.holds


def test_condition_a_vacuous_range_gives_inf_margin() -> None:
    seq = build_sequence(GEVREY1, 10)
    r = check_condition_A(seq, m0=10.0)
    assert r.holds
    assert r.margin == math.inf


def test_condition_a_rejects_bad_m0() -> None:
    seq = build_sequence(GEVREY1, 10)
    with pytest.raises(ValueError):
        check_condition_A(seq, m0=-1.0)
    with pytest.raises(ValueError):
        check_condition_A(seq, m0=math.inf)


def test_condition_report_consistency_enforced() -> None:
    with pytest.raises(ValueError):
        ConditionReport(holds=True, first_violation=(3,), margin=0.0)
    with pytest.raises(ValueError):
        ConditionReport(holds=False, first_violation=None, margin=-1.0)


# ------------------------------------------------------ derived constants


def test_fitted_constant_gevrey1_is_one() -> None:
    # ln M_n / n - ln n == 0 at every n (up to division round-off).
    c = fit_analytic_constant(build_sequence(GEVREY1, 50))
    assert c == pytest.approx(1.0, rel=1e-14)


def test_fitted_constant_gevrey2_pinned_at_n1() -> None:
    assert fit_analytic_constant(build_sequence(GEVREY2, 50)) == 1.0


def test_fitted_constant_nlogn_is_log2() -> None:
    # The minimum sits at n = 2: (2 ln 2) / 2 = ln 2.
    c = fit_analytic_constant(build_sequence(NLOGN, 50))
    assert c == pytest.approx(math.log(2.0), rel=1e-12)


def test_carleman_partial_sum_matches_exact_rationals() -> None:
    # Independent oracle: M_n = n^n as exact integers.
    n_max = 20
    exact = sum(
        Fraction(max(n - 1, 1) ** max(n - 1, 1), n**n)
        for n in range(1, n_max + 1)
    )
    diag = quasianalytic_diagnostic(build_sequence(GEVREY1, n_max))
    assert diag.partial_sum == pytest.approx(float(exact), rel=1e-12)


def test_quasianalytic_verdicts() -> None:
    assert quasianalytic_diagnostic(build_sequence(GEVREY1, 10)).quasianalytic is True
    assert quasianalytic_diagnostic(build_sequence(GEVREY2, 10)).quasianalytic is False
    assert quasianalytic_diagnostic(build_sequence(NLOGN, 10)).quasianalytic is True
    explicit = build_sequence(
        FamilySpec(kind="explicit", logs=(0.0, 0.0, 2.0, 6.0)), 3
    )
    assert quasianalytic_diagnostic(explicit).quasianalytic is None


def test_partial_sum_grows_with_prefix_length() -> None:
    short = quasianalytic_diagnostic(build_sequence(GEVREY1, 10)).partial_sum
    long = quasianalytic_diagnostic(build_sequence(GEVREY1, 40)).partial_sum
    assert long > short


# ------------------------------------------------------------ properties


@st.composite
def convex_logs(draw) -> tuple[float, ...]:
    """Random log-convex sequence via sorted ratio increments."""
    steps = draw(
        st.lists(st.floats(0.0, 5.0), min_size=3, max_size=20)
    )
    rs = sorted(steps)
    logs = [0.0]
    for r in rs:
        logs.append(logs[-1] + r)
    return tuple(logs)


@given(convex_logs())
def test_sorted_ratio_sequences_are_log_convex(logs: tuple[float, ...]) -> None:
    assert check_log_convex(LogSequence(logs)).holds


@given(convex_logs(), st.integers(1, 18), st.floats(2.6, 10.0))
def test_a_bump_in_the_logs_is_always_caught(
    logs: tuple[float, ...], pos: int, bump: float
) -> None:
    n = min(pos, len(logs) - 2)
    bumped = list(logs)
    # Raising one interior point by more than half the largest ratio gap
    # (ratio steps are capped at 5 above) must break convexity there.
    bumped[n] += bump
    r = check_log_convex(LogSequence(tuple(bumped)))
    assert not r.holds
    assert r.first_violation is not None
