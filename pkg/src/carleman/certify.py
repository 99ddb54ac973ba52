"""Membership certification from derivative bounds on a sparse order set.

Given a weight sequence ``M`` and sup-norm bounds ``F_d`` known only at a
geometrically-gapped set of orders ``d_0 < d_1 < ...``, produce a
certificate that every intermediate order is controlled:

    sup |f^(l)|  <=  K^(l+1) M_l        for d_0 <= l <= d_last,

under four hypotheses on the inputs:

  * ``M`` is log-convex,
  * ``M`` satisfies the interpolation condition (A) above ``m0``,
  * ``M_n >= c^n n^n``                                  (condition (B)),
  * ``F_d <= M_d`` at order 0 and every sparse order    (condition (C)).

The per-order envelope comes from the Cartan-Gorny inequality applied to
each bracketing pair ``(d_n, d_{n+1})``; the scalar ``K`` folds the
envelope and the closed-form constant ``C_1`` into a single log value.

All quantities are logs; ``-inf`` bounds are legal and propagate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import HypothesisFailure
from .logdomain import EPS_CMP, LOG2
from .sequences import (
    ConditionReport,
    LogSequence,
    check_condition_A,
    check_log_convex,
    fit_analytic_constant,
)


@dataclass(frozen=True)
class GapSequence:
    """Strictly increasing orders ``d_0 < d_1 < ...`` with ``d_0 >= 1``."""

    orders: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.orders) < 2:
            raise ValueError("need at least two sparse orders")
        if self.orders[0] < 1:
            raise ValueError(f"orders must start at >= 1, got {self.orders[0]}")
        for a, b in zip(self.orders, self.orders[1:]):
            if b <= a:
                raise ValueError(f"orders must strictly increase: {a} !< {b}")

    @property
    def ratio(self) -> float:
        return gap_ratio(self.orders)


def gap_ratio(orders: Sequence[int]) -> float:
    """Largest consecutive ratio ``d_{n+1} / d_n``."""
    if len(orders) < 2:
        raise ValueError("gap ratio needs at least two orders")
    return max(b / a for a, b in zip(orders, orders[1:]))


@dataclass(frozen=True)
class SparseBounds:
    """Measured log sup norms at order 0 and at each sparse order.

    ``length`` is the length of the interval the norms were taken on.
    """

    gaps: GapSequence
    log_f: tuple[float, ...]
    log_f0: float
    length: float

    def __post_init__(self) -> None:
        if len(self.log_f) != len(self.gaps.orders):
            raise ValueError(
                f"{len(self.gaps.orders)} orders but {len(self.log_f)} bounds"
            )
        if not (self.length > 0.0) or not math.isfinite(self.length):
            raise ValueError(f"interval length must be positive, got {self.length}")
        for v in (self.log_f0, *self.log_f):
            if math.isnan(v) or v == math.inf:
                raise ValueError(f"log bounds must be finite or -inf, got {v}")


@dataclass(frozen=True)
class Certificate:
    """Result of a successful certification.

    ``envelope[l - ell_min]`` bounds ``ln sup|f^(l)|`` for
    ``ell_min <= l <= ell_max``; at the sparse orders themselves the
    envelope is the supplied bound (nothing to interpolate).  ``log_k``
    is the uniform constant: ``envelope[l] <= log_k * (l + 1) + ln M_l``
    on the covered range, and ``log_k >= log_c1``.  ``coverage`` is
    ``"full"`` when order 1 is covered, else ``"partial"``.
    """

    orders: tuple[int, ...]
    m0: float
    c: float
    length: float
    c0: int
    log_c1: float
    ell_min: int
    envelope: tuple[float, ...]
    log_k: float
    coverage: str

    @property
    def ell_max(self) -> int:
        return self.ell_min + len(self.envelope) - 1

    def envelope_at(self, ell: int) -> float:
        if not (self.ell_min <= ell <= self.ell_max):
            raise ValueError(
                f"order {ell} outside certified range "
                f"[{self.ell_min}, {self.ell_max}]"
            )
        return self.envelope[ell - self.ell_min]


def check_hypotheses(
    M: LogSequence, bounds: SparseBounds, m0: float, c: float
) -> list[ConditionReport]:
    """Evaluate all four certification hypotheses; never raises on failure."""
    reports = [check_log_convex(M), check_condition_A(M, m0)]

    # (B): M_n >= c^n n^n, i.e. ln M_n - n (ln c + ln n) >= 0.
    if not (c > 0.0) or not math.isfinite(c):
        raise ValueError(f"c must be positive and finite, got {c}")
    log_c = math.log(c)
    margin = math.inf
    violation = None
    for n in range(1, M.n_max + 1):
        slack = M.logs[n] - n * (log_c + math.log(n))
        margin = min(margin, slack)
        if slack < -EPS_CMP and violation is None:
            violation = (n,)
            margin = slack
            break
    reports.append(
        ConditionReport(
            holds=violation is None,
            first_violation=violation,
            margin=margin,
            label="(B)",
        )
    )

    # (C): F_d <= M_d at order 0 and every sparse order.
    margin = M.logs[0] - bounds.log_f0
    violation = None
    if margin < -EPS_CMP:
        violation = (0,)
    else:
        for d, lf in zip(bounds.gaps.orders, bounds.log_f):
            if d > M.n_max:
                raise ValueError(
                    f"sparse order {d} exceeds weight range {M.n_max}"
                )
            slack = M.logs[d] - lf
            margin = min(margin, slack)
            if slack < -EPS_CMP:
                violation = (d,)
                margin = slack
                break
    reports.append(
        ConditionReport(
            holds=violation is None,
            first_violation=violation,
            margin=margin,
            label="(C)",
        )
    )
    return reports


def violation_phrase(r: ConditionReport) -> str:
    """Human-readable location of a failed check, e.g. ``violated at order 4``."""
    if r.holds or r.first_violation is None:
        return "holds"
    if r.label == "(A)":
        i, j, k = r.first_violation
        return f"violated at (i, j, k) = ({i}, {j}, {k})"
    if r.label == "log-convexity":
        return f"violated at n = {r.first_violation[0]}"
    return f"violated at order {r.first_violation[0]}"


def require_hypotheses(reports: Sequence[ConditionReport]) -> None:
    """Raise :class:`HypothesisFailure` on the first failed report."""
    for r in reports:
        if not r.holds:
            raise HypothesisFailure(
                r.label,
                detail=f"{violation_phrase(r)} (margin {r.margin:.6g})",
            )


def log_c1_constant(M: LogSequence, c: float, c0: int, length: float) -> float:
    """Closed-form log of the base constant ``C_1``.

        C_1 = 2 e^(c0 - 1) * (2 (c0 - 1) / (c L) + M_{c0}^(1/c0)).
    """
    if c0 < 2:
        raise ValueError(f"c0 must be >= 2, got {c0}")
    if c0 > M.n_max:
        raise ValueError(f"c0={c0} exceeds weight range {M.n_max}")
    if not (c > 0.0 and length > 0.0):
        raise ValueError("c and length must be positive")
    root = math.exp(M.logs[c0] / c0)
    return LOG2 + (c0 - 1.0) + math.log(2.0 * (c0 - 1.0) / (c * length) + root)


def intermediate_envelope(
    dn: int, dn1: int, log_f_dn: float, log_f_dn1: float, length: float
) -> list[float]:
    """Per-order envelope for ``dn < l < dn1`` from the bracketing bounds.

    Each order takes the larger of two branches of the Cartan-Gorny
    bound on an interval of the given length: a flat branch driven by
    the low endpoint alone, and a Hoelder branch mixing both endpoints
    with the exponents of :func:`interpolation_split`.  The growth
    factor uses ``c0 = max(2, dn1/dn)``: the floor at 2 keeps the
    envelope above the raw inequality even for adjacent-ratio gaps.
    """
    if not (1 <= dn < dn1):
        raise ValueError(f"need 1 <= dn < dn1, got dn={dn}, dn1={dn1}")
    if not (length > 0.0) or not math.isfinite(length):
        raise ValueError(f"interval length must be positive, got {length}")
    c0 = max(2.0, dn1 / dn)
    flat_base = math.log(2.0 * dn * (c0 - 1.0) / length)
    gap = dn1 - dn
    out: list[float] = []
    for ell in range(dn + 1, dn1):
        grow = LOG2 + ell * (c0 - 1.0)
        branch1 = grow + (ell - dn) * flat_base + log_f_dn
        inv_p = (dn1 - ell) / gap
        inv_q = (ell - dn) / gap
        branch2 = grow + inv_p * log_f_dn + inv_q * log_f_dn1
        out.append(max(branch1, branch2))
    return out


def certify_membership(
    M: LogSequence, bounds: SparseBounds, m0: float, c: float | None = None
) -> Certificate:
    """Build the certificate, or raise :class:`HypothesisFailure`.

    ``c`` defaults to the fitted analytic constant of ``M``, with which
    condition (B) holds by construction.  The uniform constant satisfies
    ``envelope(l) <= log_k (l + 1) + ln M_l`` for every covered order,
    and ``log_k >= log(C_1)`` so the same constant serves the
    closed-form tail bound beyond the sparse range.
    """
    if c is None:
        c = fit_analytic_constant(M)
    require_hypotheses(check_hypotheses(M, bounds, m0, c))

    orders = bounds.gaps.orders
    c0 = int(math.ceil(max(bounds.gaps.ratio, m0 + 1.0)))
    log_c1 = log_c1_constant(M, c, c0, bounds.length)

    envelope: list[float] = []
    for (dn, dn1), (lf, lf1) in zip(
        zip(orders, orders[1:]), zip(bounds.log_f, bounds.log_f[1:])
    ):
        envelope.append(lf)
        envelope.extend(intermediate_envelope(dn, dn1, lf, lf1, bounds.length))
    envelope.append(bounds.log_f[-1])

    ell_min = orders[0]
    log_k = log_c1
    for off, env in enumerate(envelope):
        ell = ell_min + off
        if ell > M.n_max:
            raise ValueError(
                f"certified order {ell} exceeds weight range {M.n_max}"
            )
        log_k = max(log_k, (env - M.logs[ell]) / (ell + 1.0))

    return Certificate(
        orders=orders,
        m0=m0,
        c=c,
        length=bounds.length,
        c0=c0,
        log_c1=log_c1,
        ell_min=ell_min,
        envelope=tuple(envelope),
        log_k=log_k,
        coverage="full" if ell_min <= 1 else "partial",
    )
