"""Weight sequences for Denjoy-Carleman classes, kept in log domain.

A weight sequence ``M = (M_n)`` is stored as ``logs[n] = ln M_n`` with
the usual normalization ``M_0 = 1``.  Entries like ``n**(n*s)`` would
overflow doubles almost immediately, so nothing in this package ever
materializes ``M_n`` itself.

Built-in families:

* Gevrey with index ``s >= 1``: ``M_n = n**(n*s)`` (``s = 1`` is the
  quasi-analytic borderline ``n**n``),
* NLogN: ``M_0 = M_1 = 1`` and ``M_n = (n ln n)**n`` for ``n >= 2``,
* Explicit: caller-supplied logs, normalized so ``logs[0] = 0``.

The checkers cover the two structural conditions used downstream:

* log-convexity, ``M_n**2 <= M_{n-1} M_{n+1}``, equivalently
  non-decreasing ratios ``m_n = M_{n+1}/M_n``;
* the interpolation condition (A), ``M_j <= M_k**(j/k) * M_i**(j/i)``
  for all ``i, k > m0`` with ``i < j`` and ``j/i < k``;

plus the analytic-inclusion constant (B) fit (largest ``c`` with
``M_n >= c**n * n**n`` on the stored prefix) and a Carleman-sum
quasi-analyticity diagnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .logdomain import EPS_CMP


@dataclass(frozen=True)
class FamilySpec:
    """How a weight sequence is generated.

    ``kind`` is one of ``"gevrey"`` (requires ``s >= 1``), ``"nlogn"``,
    or ``"explicit"`` (requires ``logs``).
    """

    kind: str
    s: float | None = None
    logs: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("gevrey", "nlogn", "explicit"):
            raise ValueError(f"unknown family kind: {self.kind!r}")
        if self.kind == "gevrey":
            if self.s is None or not math.isfinite(self.s):
                raise ValueError("gevrey family requires a finite index s")
            if self.s < 1.0:
                raise ValueError(f"gevrey index must satisfy s >= 1, got {self.s}")
        if self.kind == "explicit":
            if not self.logs:
                raise ValueError("explicit family requires logs")
            if any(not math.isfinite(x) for x in self.logs):
                raise ValueError("explicit logs must be finite")


@dataclass(frozen=True)
class LogSequence:
    """A finite weight-sequence prefix ``ln M_0 .. ln M_{n_max}``.

    Invariants: ``logs[0] == 0`` (``M_0 = 1``), all entries finite,
    ``n_max >= 2``.  ``family`` records provenance when the sequence
    came from :func:`build_sequence`; it drives the closed-form
    quasi-analyticity verdict and nothing else.
    """

    logs: tuple[float, ...]
    family: FamilySpec | None = None

    def __post_init__(self) -> None:
        if len(self.logs) < 3:
            raise ValueError("a weight sequence needs n_max >= 2")
        if self.logs[0] != 0.0:
            raise ValueError("logs[0] must be 0 (M_0 = 1 normalization)")
        if any(not math.isfinite(x) for x in self.logs):
            raise ValueError("weight-sequence logs must be finite")

    @property
    def n_max(self) -> int:
        return len(self.logs) - 1


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of a condition check.

    ``first_violation`` is the index tuple of the first violated
    instance (``None`` when the condition holds); ``margin`` is the
    minimum slack seen in log domain, negative on violation.  ``label``
    names the condition for diagnostics.
    """

    holds: bool
    first_violation: tuple[int, ...] | None
    margin: float
    label: str = ""

    def __post_init__(self) -> None:
        if self.holds != (self.first_violation is None):
            raise ValueError("holds must match first_violation is None")


@dataclass(frozen=True)
class QuasianalyticDiagnostic:
    """Carleman partial sum plus a closed-form verdict where known.

    ``partial_sum`` is ``sum_{n=1}^{n_max} M_{n-1}/M_n`` over the stored
    prefix.  ``quasianalytic`` is True/False only for built-in families
    whose full-series behaviour is known in closed form (Gevrey ``s = 1``
    and NLogN diverge; Gevrey ``s > 1`` converges); ``None`` otherwise.
    """

    partial_sum: float
    quasianalytic: bool | None


# ---------------------------------------------------------------- builders


def build_sequence(spec: FamilySpec, n_max: int) -> LogSequence:
    """Materialize ``ln M_0 .. ln M_{n_max}`` for a family spec.

    Explicit logs pass through after normalization (every entry is
    shifted by ``-logs[0]``, i.e. the sequence is divided by ``M_0``);
    the supplied logs must cover at least ``n_max + 1`` entries.
    """
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    if spec.kind == "gevrey":
        s = float(spec.s)  # type: ignore[arg-type]
        logs = [0.0] + [s * n * math.log(n) for n in range(1, n_max + 1)]
    elif spec.kind == "nlogn":
        logs = [0.0, 0.0] + [
            n * math.log(n * math.log(n)) for n in range(2, n_max + 1)
        ]
        logs = logs[: n_max + 1]
    else:  # explicit
        raw = spec.logs  # type: ignore[assignment]
        if len(raw) < n_max + 1:
            raise ValueError(
                f"explicit family has {len(raw)} entries, need {n_max + 1}"
            )
        base = raw[0]
        logs = [x - base for x in raw[: n_max + 1]]
        logs[0] = 0.0
    return LogSequence(logs=tuple(logs), family=spec)


def ratios(seq: LogSequence) -> list[float]:
    """Log ratios ``ln m_n = ln M_{n+1} - ln M_n`` for ``n < n_max``."""
    return [seq.logs[n + 1] - seq.logs[n] for n in range(seq.n_max)]


# ---------------------------------------------------------------- checkers


def check_log_convex(seq: LogSequence) -> ConditionReport:
    """Check ``2 ln M_n <= ln M_{n-1} + ln M_{n+1}`` for ``0 < n < n_max``.

    Equivalent to the ratio sequence ``m_n`` being non-decreasing.
    """
    margin = math.inf
    for n in range(1, seq.n_max):
        slack = seq.logs[n - 1] + seq.logs[n + 1] - 2.0 * seq.logs[n]
        margin = min(margin, slack)
        if slack < -EPS_CMP:
            return ConditionReport(
                holds=False,
                first_violation=(n,),
                margin=slack,
                label="log-convexity",
            )
    return ConditionReport(
        holds=True, first_violation=None, margin=margin, label="log-convexity"
    )


def check_condition_A(seq: LogSequence, m0: float) -> ConditionReport:
    """Exhaustive scan of the interpolation condition (A) above ``m0``.

    Verifies ``ln M_j <= (j/k) ln M_k + (j/i) ln M_i`` for every triple
    with ``i, k > m0``, ``i < j <= n_max``, ``j/i < k <= n_max``.  The
    scan stops at the first violation; on success ``margin`` is the
    minimum slack over all triples (``+inf`` when no triple qualifies).
    """
    if not math.isfinite(m0) or m0 < 0:
        raise ValueError(f"m0 must be finite and >= 0, got {m0}")
    logs = np.asarray(seq.logs, dtype=float)
    n = seq.n_max
    idx = np.arange(n + 1, dtype=float)
    margin = math.inf
    i_lo = int(math.floor(m0)) + 1  # smallest integer strictly above m0
    for j in range(i_lo + 1, n + 1):
        lj = logs[j]
        for i in range(i_lo, j):
            # strict k > max(m0, j/i)
            k_lo = int(math.floor(max(m0, j / i))) + 1
            if k_lo > n:
                continue
            ks = idx[k_lo:]
            slack = (j / ks) * logs[k_lo:] + (j / i) * logs[i] - lj
            lo = float(slack.min())
            if lo < margin:
                margin = lo
            if lo < -EPS_CMP:
                k = k_lo + int(np.argmax(slack < -EPS_CMP))
                return ConditionReport(
                    holds=False,
                    first_violation=(i, j, k),
                    margin=lo,
                    label="(A)",
                )
    return ConditionReport(
        holds=True, first_violation=None, margin=margin, label="(A)"
    )


def fit_analytic_constant(seq: LogSequence) -> float:
    """Largest ``c`` with ``M_n >= c**n * n**n`` on the stored prefix.

    ``c = exp(min_n (ln M_n / n - ln n))`` over ``1 <= n <= n_max``;
    always positive for a finite prefix.
    """
    best = min(
        seq.logs[n] / n - math.log(n) for n in range(1, seq.n_max + 1)
    )
    return math.exp(best)


def quasianalytic_diagnostic(seq: LogSequence) -> QuasianalyticDiagnostic:
    """Carleman partial sum ``sum M_{n-1}/M_n`` with a family verdict.

    The verdict refers to the *full* series and is emitted only when the
    family makes it decidable in closed form; a partial sum on its own
    never decides divergence.
    """
    partial = math.fsum(
        math.exp(seq.logs[n - 1] - seq.logs[n]) for n in range(1, seq.n_max + 1)
    )
    verdict: bool | None = None
    fam = seq.family
    if fam is not None:
        if fam.kind == "gevrey":
            verdict = fam.s is not None and fam.s <= 1.0
        elif fam.kind == "nlogn":
            verdict = True
    return QuasianalyticDiagnostic(partial_sum=partial, quasianalytic=verdict)
