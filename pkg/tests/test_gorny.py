from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from carleman.gorny import (
    CORPUS,
    GornyQuery,
    gorny_bound,
    interpolation_split,
    log_factorial,
    sampled_sup,
    verify_gorny_empirical,
)
from carleman.logdomain import LOG2


def test_log_factorial_small_values() -> None:
    assert log_factorial(0) == 0.0
    assert log_factorial(1) == 0.0
    assert log_factorial(5) == pytest.approx(math.log(120.0), rel=1e-15)
    assert log_factorial(20) == pytest.approx(math.lgamma(21.0), rel=1e-13)


# -------------------------------------------------------------- the bound


def test_bound_unit_norms_m2() -> None:
    # G_0 = G_2 = 1 on length 2pi: the flat branch loses to G_m and the
    # bound collapses to ln(2 (e^2 m / k)^k) = ln 4 + 2.
    q = GornyQuery(log_g0=0.0, log_gm=0.0, m=2, k=1, length=2.0 * math.pi)
    assert gorny_bound(q) == pytest.approx(math.log(4.0) + 2.0, rel=1e-15)


def test_bound_dominant_high_derivative() -> None:
    q = GornyQuery(log_g0=0.0, log_gm=10.0, m=4, k=2, length=2.0)
    # lead = ln 2 + 2 (2 + ln 2); inner = max(ln 24, 10) = 10.
    expect = LOG2 + 2.0 * (2.0 + LOG2) + 0.5 * 10.0
    assert gorny_bound(q) == pytest.approx(expect, rel=1e-15)
    assert gorny_bound(q) == pytest.approx(11.079441541679836, rel=1e-15)


def test_bound_identically_small_g_propagates_neg_inf() -> None:
    q = GornyQuery(log_g0=-math.inf, log_gm=0.0, m=3, k=1, length=1.0)
    assert gorny_bound(q) == -math.inf


def test_query_validation() -> None:
    with pytest.raises(ValueError, match="m must be"):
        GornyQuery(log_g0=0.0, log_gm=0.0, m=1, k=1, length=1.0)
    with pytest.raises(ValueError, match="k must lie"):
        GornyQuery(log_g0=0.0, log_gm=0.0, m=3, k=3, length=1.0)
    with pytest.raises(ValueError, match="length"):
        GornyQuery(log_g0=0.0, log_gm=0.0, m=3, k=1, length=0.0)
    with pytest.raises(ValueError, match="log_gm"):
        GornyQuery(log_g0=0.0, log_gm=math.inf, m=3, k=1, length=1.0)


@given(
    st.floats(-5.0, 5.0),
    st.floats(-5.0, 5.0),
    st.floats(0.1, 4.0),
)
def test_bound_monotone_in_both_norms(lg0: float, lgm: float, bump: float) -> None:
    base = gorny_bound(GornyQuery(log_g0=lg0, log_gm=lgm, m=5, k=2, length=1.0))
    up_g0 = gorny_bound(
        GornyQuery(log_g0=lg0 + bump, log_gm=lgm, m=5, k=2, length=1.0)
    )
    up_gm = gorny_bound(
        GornyQuery(log_g0=lg0, log_gm=lgm + bump, m=5, k=2, length=1.0)
    )
    assert up_g0 >= base - 1e-12
    assert up_gm >= base - 1e-12


# ------------------------------------------------------------ the split


def test_split_midpoint() -> None:
    sp = interpolation_split(2, 4, 3)
    assert sp.inv_p == 0.5
    assert sp.inv_q == 0.5


def test_split_rejects_endpoints_and_outside() -> None:
    for ell in (1, 2, 4, 7):
        with pytest.raises(ValueError):
            interpolation_split(2, 4, ell)
    with pytest.raises(ValueError):
        interpolation_split(0, 4, 2)
    with pytest.raises(ValueError):
        interpolation_split(4, 2, 3)


@given(st.integers(1, 500), st.integers(2, 500), st.integers(1, 498))
def test_split_identities(dn: int, gap: int, off: int) -> None:
    dn1 = dn + gap
    ell = dn + 1 + (off % (gap - 1)) if gap > 1 else dn + 1
    if not (dn < ell < dn1):
        return
    sp = interpolation_split(dn, dn1, ell)
    assert sp.inv_p + sp.inv_q == pytest.approx(1.0, rel=1e-15)
    assert dn * sp.inv_p + dn1 * sp.inv_q == pytest.approx(float(ell), rel=1e-12)


# ------------------------------------------------------------- the corpus


def test_corpus_derivatives_at_zero() -> None:
    x = np.array([0.0])
    assert CORPUS["sine"](0, x)[0] == pytest.approx(0.0, abs=1e-15)
    assert CORPUS["sine"](1, x)[0] == pytest.approx(1.0)
    assert CORPUS["cosine"](2, x)[0] == pytest.approx(-1.0)
    assert CORPUS["exp"](7, x)[0] == 1.0
    assert CORPUS["const"](0, x)[0] == 1.0
    assert CORPUS["const"](3, x)[0] == 0.0


def test_poly_derivatives_close_under_differentiation() -> None:
    # p = x^5 - 3x^3 + 2x at x = 1: p = 0, p' = -2, p'''' = 120 x.
    x = np.array([1.0])
    assert CORPUS["poly"](0, x)[0] == pytest.approx(0.0, abs=1e-12)
    assert CORPUS["poly"](1, x)[0] == pytest.approx(-2.0)
    assert CORPUS["poly"](4, x)[0] == pytest.approx(120.0)
    assert CORPUS["poly"](5, x)[0] == pytest.approx(120.0)
    assert CORPUS["poly"](6, x)[0] == 0.0


def test_runge_low_orders_match_hand_formulas() -> None:
    xs = np.linspace(-1.0, 1.0, 7)
    w = 1.0 + xs * xs
    np.testing.assert_allclose(CORPUS["runge"](0, xs), 1.0 / w, rtol=1e-13)
    np.testing.assert_allclose(
        CORPUS["runge"](1, xs), -2.0 * xs / w**2, rtol=1e-13
    )
    np.testing.assert_allclose(
        CORPUS["runge"](2, xs), (6.0 * xs * xs - 2.0) / w**3, rtol=1e-12
    )


def test_sampled_sup_of_sine_over_a_period() -> None:
    sup = sampled_sup("sine", 0, 0.0, 2.0 * math.pi)
    assert sup == pytest.approx(1.0, rel=1e-6)
    assert sup <= 1.0


def test_sampled_sup_validation() -> None:
    with pytest.raises(ValueError, match="unknown"):
        sampled_sup("mystery", 0, 0.0, 1.0)
    with pytest.raises(ValueError, match="b > a"):
        sampled_sup("sine", 0, 1.0, 1.0)
    with pytest.raises(ValueError, match="grid"):
        sampled_sup("sine", 0, 0.0, 1.0, grid=2)


def test_empirical_check_sine_holds_with_slack() -> None:
    chk = verify_gorny_empirical("sine", (0.0, 2.0 * math.pi), 2, 1)
    assert chk.holds
    assert chk.lhs <= chk.rhs
    # G_0 = G_1 = G_2 = 1 here, so the right side is exactly ln 4 + 2.
    assert chk.rhs == pytest.approx(math.log(4.0) + 2.0, rel=1e-6)


def test_empirical_check_const_degenerates_cleanly() -> None:
    chk = verify_gorny_empirical("const", (0.0, 1.0), 3, 2)
    assert chk.holds
    assert chk.lhs == -math.inf


@pytest.mark.parametrize("fn_id", sorted(CORPUS))
def test_empirical_check_whole_corpus_m4(fn_id: str) -> None:
    for k in (1, 2, 3):
        chk = verify_gorny_empirical(fn_id, (-1.0, 1.0), 4, k, grid=2000)
        assert chk.holds, (fn_id, k, chk.lhs, chk.rhs)
