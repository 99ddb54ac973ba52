"""Vanishing-order propagation for quasi-analytic classes.

For a function with ``|f^(n)| <= c**n * n**n``-type control, a Taylor
remainder argument shows that infinite-order vanishing at a point
forces ``f = 0`` on a ball of radius ``1/(c e)``; stepping half-radius
balls across an interval propagates the vanishing globally.  These
helpers quantify both pieces: the per-point log bound
``d * ln(c e |x - x0|)`` for a degree-``d`` Taylor window, and the
stepping plan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

E = math.e

#: Finite sentinel for "the bound is identically zero" (dist == 0).
#: Kept finite so report files stay plain numbers; it is far below any
#: representable genuine log bound.
LOG_ZERO = -1e300


@dataclass(frozen=True)
class PropagationPlan:
    """Half-radius stepping plan across ``[a, b]``.

    ``steps * (radius / 2) >= b - a`` by construction, so the chain of
    overlapping balls covers the interval.
    """

    radius: float
    steps: int
    c: float


def vanishing_radius(c: float) -> float:
    """Radius ``1/(c e)`` of guaranteed vanishing around a flat point."""
    if not (c > 0.0) or not math.isfinite(c):
        raise ValueError(f"analytic constant must be positive, got {c}")
    return 1.0 / (c * E)


def taylor_vanishing_bound(c: float, dist: float, d: int) -> float:
    """Log of the Taylor-window bound ``(c e dist)**d``.

    Negative (decaying in ``d``) exactly when ``dist`` is inside the
    vanishing radius.  ``dist == 0`` returns the :data:`LOG_ZERO`
    sentinel: every Taylor term vanishes identically there.
    """
    if not (c > 0.0) or not math.isfinite(c):
        raise ValueError(f"analytic constant must be positive, got {c}")
    if dist < 0.0:
        raise ValueError(f"distance must be >= 0, got {dist}")
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    if dist == 0.0:
        return LOG_ZERO
    return d * math.log(c * E * dist)


def propagation_plan(a: float, b: float, c: float) -> PropagationPlan:
    """Number of half-radius steps needed to sweep ``[a, b]``."""
    if not (b > a):
        raise ValueError(f"need b > a, got [{a}, {b}]")
    radius = vanishing_radius(c)
    steps = math.ceil((b - a) / (radius / 2.0))
    return PropagationPlan(radius=radius, steps=steps, c=c)
