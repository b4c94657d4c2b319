"""Outward scan plus bisection for the first edge of an interval around a point."""

from __future__ import annotations

from typing import Callable

from scipy.optimize import bisect


def first_edge(
    inside: Callable[[float], float],
    direction: float,
    step: float,
    limit: float,
    rtol: float = 1e-12,
) -> float | None:
    """Locate the first zero of ``inside`` moving from 0 in ``direction``.

    ``inside(x) > 0`` marks membership; ``inside(0)`` must be positive.
    The scan walks in steps of ``step`` until ``inside`` drops to <= 0
    or ``limit`` is passed, then bisects the bracketing step. Returns
    ``None`` if no edge is found within ``limit``.
    """
    prev = 0.0
    n = 1
    while n * step <= limit * (1 + 1e-12):
        x = direction * n * step
        fx = inside(x)
        if fx <= 0:
            if fx == 0:
                return x
            return bisect(inside, prev, x, xtol=abs(x) * rtol + 1e-300, rtol=rtol, maxiter=400)
        prev = x
        n += 1
    return None
