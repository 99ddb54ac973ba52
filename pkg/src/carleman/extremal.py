"""Extremal trigonometric series attached to a log-convex sequence.

For a sequence ``N`` with non-decreasing ratios ``m_k = N_{k+1}/N_k``,

    g(x) = sum_k N_k (2 m_k)^(-k) [cos(2 m_k (x - center))
                                   + sin(2 m_k (x - center))]

is smooth with two-sided derivative control tied directly to ``N``:

  * upper:  sup |g^(n)| <= 2^(n+2) N_n,
  * lower:  |g^(n)(center)| >= N_n  (every term lands on the same
    ``+-1`` phase at the center, so the term magnitudes add).

Only a finite prefix of ``N`` is held; the series is truncated after
``k_trunc`` terms, and the ideal object extends the ratios by their last
value, which turns every truncation tail into a geometric series with
log bound ``ln N_n + (n - k_trunc + 2) ln 2``.  Evaluated derivative
orders are restricted to the stored prefix.

Frequencies and term sizes can be enormous (the staircase sequences of
:mod:`.counterexample` have ratios around ``e^358``), so bound checks
run in log domain; pointwise evaluation is only offered where the values
fit in a double and raises :class:`~.errors.LogRangeError` otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import HypothesisFailure, LogRangeError
from .logdomain import EPS_CMP, LOG2, logsumexp
from .sequences import LogSequence

# math.exp overflows just above 709.78; stay clear of it.
_LOG_FLOAT_MAX = 700.0

_HALFPI = math.pi / 2.0

# Central stencils by derivative order: (offsets, weights, h-power).
_STENCILS: dict[int, tuple[tuple[int, ...], tuple[float, ...], int]] = {
    1: ((-1, 1), (-0.5, 0.5), 1),
    2: ((-1, 0, 1), (1.0, -2.0, 1.0), 2),
    3: ((-2, -1, 1, 2), (-0.5, 1.0, -1.0, 0.5), 3),
    4: ((-2, -1, 0, 1, 2), (1.0, -4.0, 6.0, -4.0, 1.0), 4),
}

# Step sizes tuned for unit-scale frequencies; callers with fast series
# should pass their own h (truncation error scales with frequency^2).
_DEFAULT_H = {1: 1e-5, 2: 1e-4, 3: 1e-3, 4: 1e-2}


@dataclass(frozen=True)
class ExtremalSeries:
    """Truncated series data: ``ln N_k`` and step ratios ``ln m_k``.

    ``n_logs`` has ``k_trunc + 1`` entries, ``log_m`` has ``k_trunc``;
    the series sums terms ``k = 0 .. k_trunc - 1`` on the interval
    ``[center - half_width, center + half_width]``.
    """

    n_logs: tuple[float, ...]
    log_m: tuple[float, ...]
    k_trunc: int
    center: float
    half_width: float = 0.5

    def __post_init__(self) -> None:
        if self.k_trunc < 2:
            raise ValueError(f"k_trunc must be >= 2, got {self.k_trunc}")
        if len(self.n_logs) != self.k_trunc + 1:
            raise ValueError(
                f"need {self.k_trunc + 1} sequence entries, got {len(self.n_logs)}"
            )
        if len(self.log_m) != self.k_trunc:
            raise ValueError(
                f"need {self.k_trunc} ratio entries, got {len(self.log_m)}"
            )
        for v in (*self.n_logs, *self.log_m):
            if not math.isfinite(v):
                raise ValueError(f"series data must be finite, got {v}")
        if not (self.half_width > 0.0) or not math.isfinite(self.half_width):
            raise ValueError(f"half width must be positive, got {self.half_width}")
        if not math.isfinite(self.center):
            raise ValueError(f"center must be finite, got {self.center}")

    def term_log(self, k: int, n: int) -> float:
        """Log magnitude of term ``k`` in the ``n``-th derivative."""
        return self.n_logs[k] + (n - k) * (LOG2 + self.log_m[k])


@dataclass(frozen=True)
class EvalResult:
    value: float
    log_tail_bound: float
    terms_used: int


@dataclass(frozen=True)
class MidpointWitness:
    """Coherent-phase lower bound at the center, all in log domain."""

    n: int
    log_value: float
    log_lower: float
    sign: int
    holds: bool


@dataclass(frozen=True)
class DerivativeBound:
    """Grid-sampled sup against the ``2^(n+2) N_n`` upper bound."""

    n: int
    log_measured: float
    log_bound: float
    holds: bool


def build_extremal(
    seq: LogSequence,
    center: float = 0.5,
    half_width: float = 0.5,
    k_trunc: int | None = None,
) -> ExtremalSeries:
    """Series from a sequence prefix; requires non-decreasing ratios."""
    if k_trunc is None:
        k_trunc = seq.n_max
    if not (2 <= k_trunc <= seq.n_max):
        raise ValueError(
            f"k_trunc must lie in 2..{seq.n_max}, got {k_trunc}"
        )
    log_m = tuple(
        seq.logs[k + 1] - seq.logs[k] for k in range(k_trunc)
    )
    for k, (a, b) in enumerate(zip(log_m, log_m[1:])):
        if b < a - EPS_CMP:
            raise HypothesisFailure(
                "log-convexity",
                detail=f"ratio decreases at step {k + 1} ({a:.6g} -> {b:.6g})",
            )
    return ExtremalSeries(
        n_logs=tuple(seq.logs[: k_trunc + 1]),
        log_m=log_m,
        k_trunc=k_trunc,
        center=center,
        half_width=half_width,
    )


def log_tail_bound(s: ExtremalSeries, n: int) -> float:
    """Truncation tail of the ``n``-th derivative: ``N_n 2^(n - k_trunc + 2)``."""
    return s.n_logs[n] + (n - s.k_trunc + 2) * LOG2


def _check_order(s: ExtremalSeries, n: int) -> None:
    if not (0 <= n <= s.k_trunc):
        raise ValueError(
            f"derivative order {n} outside stored prefix 0..{s.k_trunc}"
        )


def eval_derivative(s: ExtremalSeries, x: float, n: int) -> EvalResult:
    """Pointwise ``g^(n)(x)`` in ordinary floats.

    Terms below double underflow contribute exact zeros and are not
    counted; terms (or frequencies, off-center) above double overflow
    raise :class:`LogRangeError` — use the log-domain checks there.
    """
    _check_order(s, n)
    xp = x - s.center
    total = 0.0
    used = 0
    for k in range(s.k_trunc):
        tlog = s.term_log(k, n)
        if tlog > _LOG_FLOAT_MAX:
            raise LogRangeError(
                f"term {k} of derivative {n} has log magnitude {tlog:.4g}; "
                "value does not fit in a double"
            )
        amp = math.exp(tlog)
        if amp == 0.0:
            continue
        if s.log_m[k] > _LOG_FLOAT_MAX:
            if xp != 0.0:
                raise LogRangeError(
                    f"frequency of term {k} has log magnitude "
                    f"{s.log_m[k]:.4g}; off-center phases are not resolvable"
                )
            theta = n * _HALFPI
        else:
            theta = 2.0 * math.exp(s.log_m[k]) * xp + n * _HALFPI
        total += amp * (math.cos(theta) + math.sin(theta))
        used += 1
    return EvalResult(
        value=total, log_tail_bound=log_tail_bound(s, n), terms_used=used
    )


def _eval_grid(s: ExtremalSeries, n: int, xs: np.ndarray) -> np.ndarray:
    """Vectorized ``g^(n)`` over sample points (same range rules as above)."""
    _check_order(s, n)
    xp = xs - s.center
    out = np.zeros_like(xp)
    shift = n * _HALFPI
    for k in range(s.k_trunc):
        tlog = s.term_log(k, n)
        if tlog > _LOG_FLOAT_MAX:
            raise LogRangeError(
                f"term {k} of derivative {n} has log magnitude {tlog:.4g}; "
                "value does not fit in a double"
            )
        amp = math.exp(tlog)
        if amp == 0.0:
            continue
        if s.log_m[k] > _LOG_FLOAT_MAX:
            raise LogRangeError(
                f"frequency of term {k} has log magnitude {s.log_m[k]:.4g}; "
                "grid evaluation is not resolvable"
            )
        theta = 2.0 * math.exp(s.log_m[k]) * xp + shift
        out += amp * (np.cos(theta) + np.sin(theta))
    return out


def check_midpoint_lower(
    s: ExtremalSeries, n: int, tol: float = EPS_CMP
) -> MidpointWitness:
    """Certify ``|g^(n)(center)| >= N_n`` by coherent phase summation.

    At the center every term carries the same phase factor
    ``cos(n pi/2) + sin(n pi/2) = +-1``, so the magnitude of the sum is
    the sum of the term magnitudes — computed with logsumexp, which
    stays finite long after the value itself would overflow.
    """
    _check_order(s, n)
    log_value = logsumexp(s.term_log(k, n) for k in range(s.k_trunc))
    log_lower = s.n_logs[n]
    return MidpointWitness(
        n=n,
        log_value=log_value,
        log_lower=log_lower,
        sign=1 if n % 4 in (0, 1) else -1,
        holds=log_value >= log_lower - tol,
    )


def check_upper_bound(
    s: ExtremalSeries, n: int, grid_size: int = 4096, tol: float = EPS_CMP
) -> DerivativeBound:
    """Sample ``sup |g^(n)|`` on the domain against ``2^(n+2) N_n``."""
    _check_order(s, n)
    if grid_size < 2:
        raise ValueError(f"grid must have >= 2 points, got {grid_size}")
    xs = np.linspace(
        s.center - s.half_width, s.center + s.half_width, grid_size
    )
    sup = float(np.abs(_eval_grid(s, n, xs)).max())
    log_measured = math.log(sup) if sup > 0.0 else -math.inf
    log_bound = s.n_logs[n] + (n + 2) * LOG2
    return DerivativeBound(
        n=n,
        log_measured=log_measured,
        log_bound=log_bound,
        holds=log_measured <= log_bound + tol,
    )


def finite_difference_oracle(fn, x: float, order: int, h: float | None = None) -> float:
    """Central-difference estimate of ``fn^(order)(x)``, orders 1-4.

    ``h`` is caller-controlled; the defaults suit unit-scale functions
    and unit-scale frequencies only.
    """
    if order not in _STENCILS:
        raise ValueError(f"stencil orders are 1..4, got {order}")
    if h is None:
        h = _DEFAULT_H[order]
    if not (h > 0.0) or not math.isfinite(h):
        raise ValueError(f"step must be positive and finite, got {h}")
    offsets, weights, power = _STENCILS[order]
    acc = math.fsum(
        w * fn(x + off * h) for off, w in zip(offsets, weights)
    )
    return acc / h**power
