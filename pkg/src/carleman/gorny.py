"""Cartan-Gorny intermediate-derivative bounds, in log domain.

For ``g`` on an interval of length ``b - a`` with ``G_0 = sup|g|`` and
``G_m = sup|g^(m)|``, the intermediate sup norms satisfy

    G_k <= 2 (e^2 m / k)^k * G_0^(1 - k/m)
           * max{ m! G_0 (2/(b-a))^m, G_m }^(k/m),    1 <= k <= m - 1.

:func:`gorny_bound` evaluates the log of the right-hand side;
:func:`verify_gorny_empirical` spot-checks the inequality against a
small corpus of functions whose derivatives of every order are known in
closed form, with sup norms sampled on a dense grid (a lower bound on
the true sup, which only tightens the left side of the check).

The exponent split used throughout the interpolation machinery,
``1/p = (d' - l)/(d' - d)`` and ``1/q = (l - d)/(d' - d)`` for
``d < l < d'``, lives here as :func:`interpolation_split`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .logdomain import EPS_CMP, LOG2


@dataclass(frozen=True)
class GornyQuery:
    """Inputs for one bound evaluation.

    ``log_g0`` may be ``-inf`` (identically small ``g``); ``log_gm``
    must be finite or ``-inf``.  ``m >= 2`` and ``1 <= k <= m - 1``.
    """

    log_g0: float
    log_gm: float
    m: int
    k: int
    length: float

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError(f"m must be >= 2, got {self.m}")
        if not (1 <= self.k <= self.m - 1):
            raise ValueError(f"k must lie in 1..m-1, got k={self.k}, m={self.m}")
        if not (self.length > 0.0) or not math.isfinite(self.length):
            raise ValueError(f"interval length must be positive, got {self.length}")
        for name, v in (("log_g0", self.log_g0), ("log_gm", self.log_gm)):
            if math.isnan(v) or v == math.inf:
                raise ValueError(f"{name} must be finite or -inf, got {v}")


@dataclass(frozen=True)
class InterpolationSplit:
    """Hoelder exponents for order ``ell`` between ``dn`` and ``dn1``.

    Identities: ``inv_p + inv_q == 1`` and
    ``dn * inv_p + dn1 * inv_q == ell``.
    """

    dn: int
    dn1: int
    ell: int
    inv_p: float
    inv_q: float


@dataclass(frozen=True)
class GornyCheck:
    """One empirical verification: ``lhs <= rhs`` in log domain."""

    fn_id: str
    interval: tuple[float, float]
    m: int
    k: int
    lhs: float
    rhs: float
    holds: bool


def log_factorial(m: int) -> float:
    """``ln m!`` by direct summation (exact enough for m in the hundreds)."""
    return math.fsum(math.log(j) for j in range(2, m + 1))


def gorny_bound(q: GornyQuery) -> float:
    """Log of the Cartan-Gorny right-hand side for ``q``.

    ``-inf`` propagates: an identically-zero ``g`` (``log_g0 = -inf``)
    yields a ``-inf`` bound, consistent with all its derivatives
    vanishing.
    """
    k, m = q.k, q.m
    lead = LOG2 + k * (2.0 + math.log(m) - math.log(k))
    flat = log_factorial(m) + q.log_g0 + m * math.log(2.0 / q.length)
    inner = max(flat, q.log_gm)
    return lead + (1.0 - k / m) * q.log_g0 + (k / m) * inner


def interpolation_split(dn: int, dn1: int, ell: int) -> InterpolationSplit:
    """Split ``ell`` strictly between ``dn`` and ``dn1``.

    Rejects ``ell`` outside the open range — adjacent orders
    (``dn1 == dn + 1``) admit no interior integer at all.
    """
    if not (1 <= dn < dn1):
        raise ValueError(f"need 1 <= dn < dn1, got dn={dn}, dn1={dn1}")
    if not (dn < ell < dn1):
        raise ValueError(
            f"order {ell} is not strictly between {dn} and {dn1}"
        )
    gap = dn1 - dn
    return InterpolationSplit(
        dn=dn,
        dn1=dn1,
        ell=ell,
        inv_p=(dn1 - ell) / gap,
        inv_q=(ell - dn) / gap,
    )


# ------------------------------------------------------------------ corpus
#
# Each corpus entry maps (order, points) -> derivative values, exactly.

def _sine(n: int, x: np.ndarray) -> np.ndarray:
    return np.sin(x + n * math.pi / 2.0)


def _cosine(n: int, x: np.ndarray) -> np.ndarray:
    return np.cos(x + n * math.pi / 2.0)


def _exp(n: int, x: np.ndarray) -> np.ndarray:
    return np.exp(x)


_POLY_COEFFS = (0.0, 2.0, 0.0, -3.0, 0.0, 1.0)  # x^5 - 3x^3 + 2x


def _poly(n: int, x: np.ndarray) -> np.ndarray:
    c = np.polynomial.polynomial.polyder(_POLY_COEFFS, n) if n else _POLY_COEFFS
    return np.polynomial.polynomial.polyval(x, c) + np.zeros_like(x)


def _const(n: int, x: np.ndarray) -> np.ndarray:
    return np.ones_like(x) if n == 0 else np.zeros_like(x)


def _runge(n: int, x: np.ndarray) -> np.ndarray:
    # f = 1/(1+x^2); Leibniz on (1+x^2) f = 1 gives the stable recursion
    # f^(n) = -(2 n x f^(n-1) + n (n-1) f^(n-2)) / (1 + x^2).
    w = 1.0 + x * x
    f_prev2 = 1.0 / w
    if n == 0:
        return f_prev2
    f_prev1 = -2.0 * x / (w * w)
    if n == 1:
        return f_prev1
    for j in range(2, n + 1):
        f_cur = -(2.0 * j * x * f_prev1 + j * (j - 1) * f_prev2) / w
        f_prev2, f_prev1 = f_prev1, f_cur
    return f_prev1


CORPUS: dict[str, Callable[[int, np.ndarray], np.ndarray]] = {
    "sine": _sine,
    "cosine": _cosine,
    "exp": _exp,
    "poly": _poly,
    "runge": _runge,
    "const": _const,
}


def sampled_sup(
    fn_id: str, order: int, a: float, b: float, grid: int = 10_000
) -> float:
    """Grid max of ``|f^(order)|`` on ``[a, b]`` with one refinement pass.

    The result is a lower bound on the true sup norm; the refinement
    re-grids a neighbourhood of the coarse argmax.
    """
    if fn_id not in CORPUS:
        raise ValueError(f"unknown corpus function: {fn_id!r}")
    if not (b > a):
        raise ValueError(f"need b > a, got [{a}, {b}]")
    if grid < 3:
        raise ValueError(f"grid must have >= 3 points, got {grid}")
    fn = CORPUS[fn_id]
    xs = np.linspace(a, b, grid)
    vals = np.abs(fn(order, xs))
    top = int(np.argmax(vals))
    lo = xs[max(0, top - 1)]
    hi = xs[min(grid - 1, top + 1)]
    fine = np.abs(fn(order, np.linspace(lo, hi, 129)))
    return float(max(vals[top], fine.max()))


def verify_gorny_empirical(
    fn_id: str,
    interval: tuple[float, float],
    m: int,
    k: int,
    grid: int = 10_000,
) -> GornyCheck:
    """Check the bound for one corpus function / interval / order pair.

    Both sides use the same sampled sup norms: the left side is then a
    lower bound on the true ``G_k``, while the right side can only be an
    underestimate of the true bound, so a pass is meaningful and a
    failure would be a genuine contradiction.
    """
    a, b = interval
    g0 = sampled_sup(fn_id, 0, a, b, grid)
    gk = sampled_sup(fn_id, k, a, b, grid)
    gm = sampled_sup(fn_id, m, a, b, grid)
    log_g0 = math.log(g0) if g0 > 0.0 else -math.inf
    log_gk = math.log(gk) if gk > 0.0 else -math.inf
    log_gm = math.log(gm) if gm > 0.0 else -math.inf
    rhs = gorny_bound(
        GornyQuery(log_g0=log_g0, log_gm=log_gm, m=m, k=k, length=b - a)
    )
    holds = log_gk <= rhs + EPS_CMP
    return GornyCheck(
        fn_id=fn_id,
        interval=(a, b),
        m=m,
        k=k,
        lhs=log_gk,
        rhs=rhs,
        holds=holds,
    )
