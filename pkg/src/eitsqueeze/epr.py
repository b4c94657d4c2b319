"""Strong and weak EPR criteria on the joint quadratures X_a - X_b and P_a + P_b.

The criteria bound the product of standard deviations
``sqrt(var_x * var_p)``: below 1/4 is the strong (EPR-paradox) regime,
below 1/2 the weak (inseparability) regime. Both are strict, so the
vacuum product of exactly 1/2 is not entangled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import bisect

from .eit import channel_pair
from .errors import ConjugateMismatch, NeverSatisfied, NonMonotone
from .homodyne import Formula, evaluate, variance
from .params import PhaseMode, RunConfig

STRONG_BOUND = 0.25
WEAK_BOUND = 0.5
CONJUGATE_TOL = 1e-10


class EprLevel(str, Enum):
    STRONG = "strong"
    WEAK = "weak"
    NONE = "none"

    @property
    def rank(self) -> int:
        return {"none": 0, "weak": 1, "strong": 2}[self.value]


@dataclass(frozen=True)
class EprClassification:
    level: EprLevel
    product: float
    var_x: float
    var_p: float


def classify(var_x: float, var_p: float) -> EprClassification:
    if var_x < 0 or var_p < 0:
        raise ValueError(f"variances must be non-negative, got {var_x!r}, {var_p!r}")
    product = math.sqrt(var_x * var_p)
    if product < STRONG_BOUND:
        level = EprLevel.STRONG
    elif product < WEAK_BOUND:
        level = EprLevel.WEAK
    else:
        level = EprLevel.NONE
    return EprClassification(level=level, product=product, var_x=var_x, var_p=var_p)


def lo_phase_for(theta: float, phi: float, fiber_static: float) -> float:
    """LO phase at which the homodyne measures ``X^theta_phi`` (up to its noise)."""
    return 0.5 * (theta + phi - math.pi + fiber_static)


def conjugate_variances(
    config: RunConfig,
    omega: float,
    formula: Formula,
    phase_mode: PhaseMode | None = None,
    t_mag: float | None = None,
) -> tuple[float, float]:
    """Variances of ``X_a - X_b`` and ``P_a + P_b`` at sideband ``omega``.

    The second quadrature is the first with per-mode phases shifted by
    ``(+pi/2, -pi/2)``; each is evaluated separately.
    """
    phi_lo = evaluate(config, omega, formula, phase_mode, t_mag).phi_lo
    s_f = channel_pair(config, omega).fiber_phase_static
    theta, phi = phi_lo, math.pi + phi_lo - s_f

    var_x = variance(config, omega, formula, lo_phase_for(theta, phi, s_f), t_mag).variance
    shifted = lo_phase_for(theta + math.pi / 2, phi - math.pi / 2, s_f)
    var_p = variance(config, omega, formula, shifted, t_mag).variance
    if abs(var_x - var_p) > CONJUGATE_TOL:
        raise ConjugateMismatch(f"var_x = {var_x!r} but var_p = {var_p!r}")
    return var_x, var_p


def classify_point(config, omega, formula, phase_mode=None, t_mag=None) -> EprClassification:
    return classify(*conjugate_variances(config, omega, formula, phase_mode, t_mag))


def threshold_scan(config: RunConfig, omega: float, formula: Formula, criterion: EprLevel) -> float:
    """Smallest |T| in [0, 1] at which ``criterion`` holds, at the optimal LO phase."""
    criterion = EprLevel(criterion)
    if criterion is EprLevel.NONE:
        raise ValueError("criterion must be 'weak' or 'strong'")
    bound = STRONG_BOUND if criterion is EprLevel.STRONG else WEAK_BOUND

    def product(t):
        return classify_point(config, omega, formula, PhaseMode.OPTIMIZED, t).product

    grid = np.linspace(0.0, 1.0, 101)
    values = np.array([product(t) for t in grid])
    if np.any(np.diff(values) > 1e-12):
        raise NonMonotone(f"EPR product not decreasing in |T| at omega={omega!r} ({formula})")
    if values[-1] >= bound:
        raise NeverSatisfied(f"{criterion.value} criterion fails even at |T| = 1 (product {values[-1]:.6g})")
    if values[0] < bound:
        return 0.0
    return bisect(lambda t: product(t) - bound, 0.0, 1.0, xtol=1e-12)
