"""Sparse-control counterexample: a comparison sequence that rejoins the
weight at a thin set of orders yet is doubly-exponentially larger between
them.

Starting from a log-convex weight ``M`` and a seed order ``i0``, the
construction produces orders

    i0 < d_0 < i_1 < d_1 < ... ,

a piecewise-constant log-ratio profile, and the induced sequence ``N``
(as prefix sums of the ratios) such that

  * ``N`` is log-convex (ratios never decrease),
  * ``N_{d_n} = M_{d_n}`` at every rejoin order,
  * ``N_{i_n} >= 2^(2^{i_n}) M_{i_n}`` at every excess order.

A function built on ``N`` therefore obeys ``M``-sized derivative bounds
along the ``d_n`` while beating ``K^(n+1) M_n`` at the ``i_n`` for any
fixed ``K`` — no uniform constant can certify membership from the sparse
orders alone.

The rejoin orders grow as iterated exponentials (``d_1`` can exceed
``1e150``), so ``N`` is never materialised: it is stored as run-length
:class:`RatioBlock` rows over exact integer indices, and the searches
walk the index space with a doubling bracket plus bisection.  Bisection
is exact here because every search predicate is monotone in the index, a
consequence of the weight's log-convexity.  Weight access goes through
:class:`WeightOracle`, which enforces a probe budget and an index
ceiling.

At rejoin-order magnitude ~1e150 the log values are ~1e152, so float
evaluation carries absolute noise far above unit index resolution;
equalities and minimality there are meaningful at relative scale only,
which is how :func:`verify_counterexample` checks them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import SearchBudgetExceeded
from .logdomain import EPS_CMP, INDEX_CEILING, LOG2, log_pow2_tower
from .sequences import ConditionReport, LogSequence


class WeightOracle:
    """Budgeted access to ``ln M_n`` at arbitrary integer orders.

    ``fn`` maps an order (any non-negative int, however large) to a
    finite log weight.  Every probe counts against ``index_budget``;
    exceeding it, or probing past the index ceiling, raises
    :class:`SearchBudgetExceeded`.
    """

    def __init__(
        self,
        fn: Callable[[int], float],
        index_budget: int = 10**6,
        name: str = "",
    ):
        if index_budget < 1:
            raise ValueError(f"index budget must be >= 1, got {index_budget}")
        self.fn = fn
        self.index_budget = index_budget
        self.name = name
        self.probes = 0

    def log_at(self, n: int) -> float:
        if n < 0:
            raise ValueError(f"order must be >= 0, got {n}")
        if n > INDEX_CEILING:
            raise SearchBudgetExceeded(
                "index ceiling", detail=f"order {n} exceeds {INDEX_CEILING}"
            )
        self.probes += 1
        if self.probes > self.index_budget:
            raise SearchBudgetExceeded(
                "probe budget",
                detail=f"exceeded {self.index_budget} oracle probes",
            )
        v = float(self.fn(n))
        if math.isnan(v) or math.isinf(v):
            raise ValueError(f"oracle returned non-finite log weight at {n}: {v}")
        return v

    def ratio_at(self, n: int) -> float:
        """``ln(M_{n+1} / M_n)`` — two probes."""
        return self.log_at(n + 1) - self.log_at(n)


def gevrey_oracle(s: float, index_budget: int = 10**6) -> WeightOracle:
    """``M_n = n^(s n)``."""
    if not (s >= 1.0) or not math.isfinite(s):
        raise ValueError(f"gevrey exponent must be >= 1, got {s}")
    return WeightOracle(
        lambda n: 0.0 if n == 0 else s * float(n) * math.log(float(n)),
        index_budget=index_budget,
        name=f"gevrey-{s:g}",
    )


def power_oracle(base: float = 1.0, index_budget: int = 10**6) -> WeightOracle:
    """``M_n = base^n n^n`` (``base = 1``: the pure ``n^n`` weight)."""
    if not (base > 0.0) or not math.isfinite(base):
        raise ValueError(f"base must be positive and finite, got {base}")
    log_b = math.log(base)
    return WeightOracle(
        lambda n: 0.0 if n == 0 else float(n) * (log_b + math.log(float(n))),
        index_budget=index_budget,
        name="power" if base == 1.0 else f"power-{base:g}",
    )


def nlogn_oracle(index_budget: int = 10**6) -> WeightOracle:
    """``M_n = (n ln n)^n`` with ``M_0 = M_1 = 1``."""
    return WeightOracle(
        lambda n: (
            0.0
            if n <= 1
            else float(n) * math.log(float(n) * math.log(float(n)))
        ),
        index_budget=index_budget,
        name="nlogn",
    )


def geometric_oracle(q: float, index_budget: int = 10**6) -> WeightOracle:
    """Ratio sequence ``q^n``, i.e. ``M_n = q^(n(n-1)/2)``."""
    if not (q > 1.0) or not math.isfinite(q):
        raise ValueError(f"ratio base must be > 1, got {q}")
    log_q = math.log(q)
    return WeightOracle(
        lambda n: float(n) * (float(n) - 1.0) / 2.0 * log_q,
        index_budget=index_budget,
        name=f"geometric-{q:g}",
    )


def sequence_oracle(seq: LogSequence, index_budget: int = 10**6) -> WeightOracle:
    """Oracle view of an explicit finite sequence (probes past the end fail)."""

    def fn(n: int) -> float:
        if n > seq.n_max:
            raise ValueError(
                f"order {n} beyond explicit sequence range {seq.n_max}"
            )
        return seq.logs[n]

    return WeightOracle(fn, index_budget=index_budget, name="explicit")


@dataclass(frozen=True)
class RatioBlock:
    """Constant log-ratio on steps ``start .. stop - 1``.

    Step ``n`` is the transition ``N_n -> N_{n+1}``; indices are exact
    Python ints and may be astronomically large.
    """

    start: int
    stop: int
    log_ratio: float

    def __post_init__(self) -> None:
        if not (0 <= self.start < self.stop):
            raise ValueError(
                f"need 0 <= start < stop, got [{self.start}, {self.stop})"
            )
        if not math.isfinite(self.log_ratio):
            raise ValueError(f"log ratio must be finite, got {self.log_ratio}")

    @property
    def width(self) -> int:
        return self.stop - self.start


@dataclass(frozen=True)
class CounterexampleCert:
    """Constructed orders and the run-length ratio profile of ``N``.

    ``d`` holds the rejoin orders (one per round), ``i`` the excess
    orders of rounds past the first.  ``blocks`` tile ``[0, d[-1])``
    contiguously, so every ``ln N_n`` with ``n <= d[-1]`` is a prefix
    sum over them.
    """

    i0: int
    d: tuple[int, ...]
    i: tuple[int, ...]
    blocks: tuple[RatioBlock, ...]
    oracle_name: str
    witness_log2_bound: float
    probes: int

    def __post_init__(self) -> None:
        if not self.d:
            raise ValueError("need at least one rejoin order")
        if len(self.i) != len(self.d) - 1:
            raise ValueError(
                f"{len(self.d)} rejoin orders need {len(self.d) - 1} "
                f"excess orders, got {len(self.i)}"
            )
        if not self.blocks or self.blocks[0].start != 0:
            raise ValueError("blocks must start at order 0")
        for a, b in zip(self.blocks, self.blocks[1:]):
            if b.start != a.stop:
                raise ValueError(
                    f"blocks must tile contiguously: {a.stop} != {b.start}"
                )
        if self.blocks[-1].stop != self.d[-1]:
            raise ValueError("blocks must end at the last rejoin order")

    @property
    def rounds(self) -> int:
        return len(self.d)

    def log_ratio_at(self, n: int) -> float:
        """Log ratio of step ``n`` (``n < d[-1]``)."""
        for b in self.blocks:
            if b.start <= n < b.stop:
                return b.log_ratio
        raise ValueError(f"step {n} outside constructed range [0, {self.d[-1]})")

    def n_log_at(self, n: int) -> float:
        """``ln N_n`` as a prefix sum of block ratios (``n <= d[-1]``)."""
        if not (0 <= n <= self.d[-1]):
            raise ValueError(
                f"order {n} outside constructed range [0, {self.d[-1]}]"
            )
        parts = []
        for b in self.blocks:
            if n <= b.start:
                break
            parts.append(float(min(n, b.stop) - b.start) * b.log_ratio)
        return math.fsum(parts)

    def log_m_prefix(self, count: int) -> list[float]:
        """First ``count`` step ratios (``count <= d[-1]``)."""
        if not (0 <= count <= self.d[-1]):
            raise ValueError(
                f"count {count} outside constructed range [0, {self.d[-1]}]"
            )
        return [self.log_ratio_at(n) for n in range(count)]

    def sequence_prefix(self, n_max: int) -> LogSequence:
        """``N_0 .. N_{n_max}`` as a :class:`LogSequence`."""
        if n_max > self.d[-1]:
            raise ValueError(
                f"prefix length {n_max} exceeds constructed range {self.d[-1]}"
            )
        return LogSequence(tuple(self.n_log_at(n) for n in range(n_max + 1)))


def search_threshold_index(
    predicate: Callable[[int], bool],
    start: int,
    step: str,
    window: int = 128,
) -> int:
    """Smallest ``n >= start`` with ``predicate(n)`` true.

    Requires a monotone predicate (false up to some index, true after).
    Scans a short linear window, then brackets by doubling and finishes
    with bisection; cost is logarithmic in the answer.  Indices past the
    global ceiling raise :class:`SearchBudgetExceeded` tagged with
    ``step``.
    """
    for n in range(start, start + window):
        if predicate(n):
            return n
    lo = start + window - 1  # known false
    offset = window
    while True:
        hi = start + offset
        if hi > INDEX_CEILING:
            raise SearchBudgetExceeded(
                step, detail=f"no hit below index ceiling {INDEX_CEILING}"
            )
        if predicate(hi):
            break
        lo = hi
        offset *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return hi


def construct_counterexample(
    oracle: WeightOracle,
    i0: int,
    rounds: int,
    witness_log2_bound: float = 64.0,
) -> CounterexampleCert:
    """Run the staircase construction for the given number of rounds.

    Round 0 flattens all ratios below the first rejoin order ``d_0``,
    chosen as the smallest order whose average weight ratio reaches the
    seed excess ``2^(2^{i0}) M_{i0}``.  Each later round picks the next
    excess order ``i_n`` (smallest order whose excess value clears the
    flat continuation of the weight from ``d_{n-1}``), runs a steep
    constant-ratio block through it, and rejoins the weight at the first
    order ``d_n`` the weight catches up.

    ``witness_log2_bound`` strengthens the excess-order search so that
    the excess ``2^(2^i)`` beats ``K^(i+1)`` for every ``K`` up to
    ``2^witness_log2_bound``; pass 0 to disable.
    """
    if i0 < 1:
        raise ValueError(f"seed order must be >= 1, got {i0}")
    if rounds < 1:
        raise ValueError(f"rounds must be >= 1, got {rounds}")
    if witness_log2_bound < 0 or not math.isfinite(witness_log2_bound):
        raise ValueError(
            f"witness bound must be finite and >= 0, got {witness_log2_bound}"
        )

    # Round 0: constant average ratio through d_0.
    thr = (log_pow2_tower(i0) + oracle.log_at(i0)) / i0

    def slope_hit(d: int) -> bool:
        return oracle.log_at(d) / d >= thr - EPS_CMP

    d0 = search_threshold_index(slope_hit, i0 + 1, step="rejoin order d_0")
    blocks = [RatioBlock(0, d0, oracle.log_at(d0) / d0)]
    d_list = [d0]
    i_list: list[int] = []

    for r_idx in range(1, rounds):
        d_prev = d_list[-1]
        base = oracle.log_at(d_prev)
        slope_floor = base - oracle.log_at(d_prev - 1)

        def excess_hit(i: int, _base=base, _prev=d_prev, _floor=slope_floor) -> bool:
            if witness_log2_bound > 0.0 and not (
                2**i > witness_log2_bound * (i + 1)
            ):
                return False
            lhs = log_pow2_tower(i) + oracle.log_at(i)
            return lhs >= _base + (i - _prev) * _floor - EPS_CMP

        i_n = search_threshold_index(
            excess_hit, d_prev + 1, step=f"excess order i_{r_idx}"
        )
        excess_val = log_pow2_tower(i_n) + oracle.log_at(i_n)
        ratio = (excess_val - base) / (i_n - d_prev)

        def caught_up(d: int, _base=base, _prev=d_prev, _r=ratio) -> bool:
            return oracle.log_at(d) >= _base + float(d - _prev) * _r - EPS_CMP

        d_n = search_threshold_index(
            caught_up, i_n + 1, step=f"rejoin order d_{r_idx}"
        )
        # Steep block through the excess order, then one step adjusted to
        # land exactly on the weight (>= ratio since the weight had not
        # yet caught up one step earlier).  At huge rejoin orders the
        # adjustment is a difference of ~1e158-sized logs and collapses
        # into float noise; the clamp keeps the profile monotone, and
        # the landing stays exact at relative precision either way.
        blocks.append(RatioBlock(d_prev, d_n - 1, ratio))
        line_prev = base + float(d_n - 1 - d_prev) * ratio
        last = max(oracle.log_at(d_n) - line_prev, ratio)
        blocks.append(RatioBlock(d_n - 1, d_n, last))
        d_list.append(d_n)
        i_list.append(i_n)

    return CounterexampleCert(
        i0=i0,
        d=tuple(d_list),
        i=tuple(i_list),
        blocks=tuple(blocks),
        oracle_name=oracle.name,
        witness_log2_bound=witness_log2_bound,
        probes=oracle.probes,
    )


def _rel_slack(slack: float, *scales: float) -> float:
    return slack / max(1.0, *(abs(s) for s in scales))


def verify_counterexample(
    cert: CounterexampleCert, oracle: WeightOracle, tol: float = EPS_CMP
) -> list[ConditionReport]:
    """Re-check the four construction invariants against a fresh oracle.

    All comparisons are at relative scale ``tol`` — at rejoin orders
    near ``1e150`` the log values sit around ``1e152``, where absolute
    float resolution is coarser than any unit index step.

      1. ratio monotonicity: block log ratios never decrease;
      2. rejoin: ``ln N_d`` matches ``ln M_d`` at every rejoin order;
      3. excess: ``ln N_i`` reaches ``2^i ln 2 + ln M_i`` at the seed
         and every excess order;
      4. minimality: each found order satisfies its search predicate and
         its predecessor does not.
    """
    reports: list[ConditionReport] = []

    # 1. ratios non-decreasing across the whole profile.
    margin = math.inf
    violation = None
    for idx, (a, b) in enumerate(zip(cert.blocks, cert.blocks[1:])):
        slack = _rel_slack(b.log_ratio - a.log_ratio, a.log_ratio, b.log_ratio)
        margin = min(margin, slack)
        if slack < -tol and violation is None:
            violation = (idx,)
            margin = slack
            break
    reports.append(
        ConditionReport(
            holds=violation is None,
            first_violation=violation,
            margin=margin,
            label="ratio-monotonicity",
        )
    )

    # 2. exact rejoin at every d.
    margin = math.inf
    violation = None
    for d in cert.d:
        nv, mv = cert.n_log_at(d), oracle.log_at(d)
        slack = _rel_slack(-abs(nv - mv), nv, mv)
        margin = min(margin, slack)
        if slack < -tol and violation is None:
            violation = (d,)
            margin = slack
            break
    reports.append(
        ConditionReport(
            holds=violation is None,
            first_violation=violation,
            margin=margin,
            label="rejoin at d",
        )
    )

    # 3. excess reached at i0 and every later excess order.
    margin = math.inf
    violation = None
    for i in (cert.i0, *cert.i):
        target = log_pow2_tower(i) + oracle.log_at(i)
        slack = _rel_slack(cert.n_log_at(i) - target, target)
        margin = min(margin, slack)
        if slack < -tol and violation is None:
            violation = (i,)
            margin = slack
            break
    reports.append(
        ConditionReport(
            holds=violation is None,
            first_violation=violation,
            margin=margin,
            label="excess at i",
        )
    )

    # 4. minimality: predicate true at each found order, false one
    # order earlier (all search predicates are monotone).
    def slope_slack(d: int) -> float:
        thr = (log_pow2_tower(cert.i0) + oracle.log_at(cert.i0)) / cert.i0
        val = oracle.log_at(d) / d
        return _rel_slack(val - thr, val, thr)

    checks: list[tuple[tuple[int, ...], float]] = [((0, cert.d[0]), slope_slack(cert.d[0]))]
    if cert.d[0] - 1 > cert.i0:
        checks.append(((0, cert.d[0] - 1), -slope_slack(cert.d[0] - 1)))
    for r_idx, (i_n, d_n) in enumerate(zip(cert.i, cert.d[1:]), start=1):
        d_prev = cert.d[r_idx - 1]
        base = oracle.log_at(d_prev)
        slope_floor = base - oracle.log_at(d_prev - 1)

        def excess_slack(i: int) -> float:
            if cert.witness_log2_bound > 0.0 and not (
                2**i > cert.witness_log2_bound * (i + 1)
            ):
                return -math.inf
            lhs = log_pow2_tower(i) + oracle.log_at(i)
            rhs = base + (i - d_prev) * slope_floor
            return _rel_slack(lhs - rhs, lhs, rhs)

        checks.append(((r_idx, i_n), excess_slack(i_n)))
        if i_n - 1 > d_prev:
            checks.append(((r_idx, i_n - 1), -excess_slack(i_n - 1)))

        ratio = cert.log_ratio_at(d_prev)

        def catch_slack(d: int) -> float:
            lhs = oracle.log_at(d)
            rhs = base + float(d - d_prev) * ratio
            return _rel_slack(lhs - rhs, lhs, rhs)

        checks.append(((r_idx, d_n), catch_slack(d_n)))
        if d_n - 1 > i_n:
            checks.append(((r_idx, d_n - 1), -catch_slack(d_n - 1)))

    margin = math.inf
    violation = None
    for where, slack in checks:
        margin = min(margin, slack)
        if slack < -tol and violation is None:
            violation = where
            margin = slack
            break
    reports.append(
        ConditionReport(
            holds=violation is None,
            first_violation=violation,
            margin=margin,
            label="minimality",
        )
    )
    return reports
