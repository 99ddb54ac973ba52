"""Small log-domain helpers used throughout the package.

Every quantity that can grow like ``n**n`` (or worse) is carried as a
natural log.  Comparisons between such quantities use the shared
slack ``EPS_CMP``.
"""

from __future__ import annotations

import math
from typing import Iterable

from .errors import LogRangeError

LOG2 = math.log(2.0)

#: Slack for log-domain inequality checks.
EPS_CMP = 1e-9

#: Largest ``i`` for which ``2**i * ln 2`` stays comfortably inside
#: double range; beyond it even the *log* of the excess factor
#: ``2**(2**i)`` overflows useful arithmetic.
POW2_INDEX_CAP = 900

#: Threshold searches refuse to probe indices beyond this; the weight
#: families evaluate ``n * ln n``-like expressions that need ``float(n)``.
INDEX_CEILING = 10**300


def log_pow2_tower(i: int) -> float:
    """Return ``ln(2**(2**i)) = 2**i * ln 2``, guarding the exponent."""
    if i < 0:
        raise ValueError(f"negative exponent index: {i}")
    if i > POW2_INDEX_CAP:
        raise LogRangeError(
            f"2**(2**{i}) exceeds the representable log range "
            f"(cap is i <= {POW2_INDEX_CAP})"
        )
    return math.ldexp(LOG2, i)


def logsumexp(values: Iterable[float]) -> float:
    """ln(sum(exp(v))) without overflow; -inf for an empty/zero sum."""
    vals = list(values)
    if not vals:
        return -math.inf
    m = max(vals)
    if m == -math.inf:
        return -math.inf
    if math.isinf(m):
        return m
    return m + math.log(math.fsum(math.exp(v - m) for v in vals))


def close_rel(a: float, b: float, tol: float = EPS_CMP) -> bool:
    """Relative closeness in log domain, with an absolute floor of 1."""
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))
