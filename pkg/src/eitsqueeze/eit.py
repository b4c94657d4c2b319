"""Lambda-system susceptibility, EIT transmission and the fiber delay line.

Detuning convention: ``omega = omega_ca - omega_p``. The dispersive phase
picked up in the cell then falls with ``omega`` near line centre, and a
fiber of the right length cancels it to first order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath

from ._search import first_edge
from .errors import AbsorptionDominates, DerivativeMismatch, LevelUnreachable
from .params import CONSTANTS, EitParams, FiberParams, RunConfig

CHI_LIMIT = 1e-2
FD_STEP = 1e2  # 1/s, central-difference step for the group-delay cross-check


@dataclass(frozen=True)
class Susceptibility:
    chi1: float
    chi2: float
    omega: float

    @property
    def value(self) -> complex:
        return complex(self.chi1, self.chi2)


@dataclass(frozen=True)
class ChannelPair:
    """Per-sideband channel data for mode A (EIT cell) and mode B (fiber)."""

    t_mag: float
    t_phase_disp: float
    t_phase_static: float
    r_mag: float
    fiber_phase_disp: float
    fiber_phase_static: float
    omega: float

    @property
    def t_complex(self) -> complex:
        return self.t_mag * complex(math.cos(self.t_phase), math.sin(self.t_phase))

    @property
    def t_phase(self) -> float:
        return self.t_phase_static + self.t_phase_disp

    @property
    def fiber_phase(self) -> float:
        return self.fiber_phase_static + self.fiber_phase_disp


@lru_cache(maxsize=256)
def reduce_mod_2pi(numerator: tuple, denominator: float) -> float:
    """``prod(numerator) / denominator`` reduced to [0, 2pi) in 60-digit arithmetic.

    The float inputs are taken as exact; double-precision reduction of
    a 1e10 rad argument would leave no significant digits.
    """
    with mpmath.workdps(60):
        x = mpmath.mpf(1)
        for factor in numerator:
            x *= mpmath.mpf(factor)
        x /= mpmath.mpf(denominator)
        r = x - 2 * mpmath.pi * mpmath.floor(x / (2 * mpmath.pi))
        return float(r)


def coupling_strength(eit: EitParams) -> float:
    """``N |mu_ac|^2 / (hbar eps0)``, in 1/s."""
    return eit.n_density * eit.mu_ac**2 / (CONSTANTS.hbar * CONSTANTS.epsilon0)


def propagation_scale(eit: EitParams) -> float:
    """``omega0 z / 2c``: converts chi into phase and log-amplitude."""
    return eit.omega0 * eit.z / (2 * CONSTANTS.c)


def chi_raw(eit: EitParams, omega: float) -> complex:
    num = omega - 1j * eit.gamma_b
    den = num * (omega - 1j * eit.gamma_c) - eit.omega_c**2
    return coupling_strength(eit) * num / den


def susceptibility(eit: EitParams, omega: float) -> Susceptibility:
    chi = chi_raw(eit, omega)
    if abs(chi) >= CHI_LIMIT:
        raise AbsorptionDominates(
            f"|chi| = {abs(chi):.3g} >= {CHI_LIMIT} at omega = {omega!r}; "
            "weak-susceptibility expansion invalid"
        )
    return Susceptibility(chi1=chi.real, chi2=chi.imag, omega=float(omega))


def eit_static_phase(eit: EitParams) -> float:
    """``omega0 z / c`` mod 2pi."""
    return reduce_mod_2pi((eit.omega0, eit.z), CONSTANTS.c)


def eit_static_phase_raw(eit: EitParams) -> float:
    return eit.omega0 * eit.z / CONSTANTS.c


def fiber_static_phase_raw(fiber: FiberParams, omega0: float) -> float:
    return fiber.n_f * omega0 * fiber.l_f / CONSTANTS.c


def fiber_phase(fiber: FiberParams, omega0: float, omega: float) -> tuple[float, float]:
    """(static, dispersive) phase of the delay line at sideband ``omega``.

    The static part ``n_f omega0 l_f / c`` is reduced mod 2pi; the
    dispersive part ``-omega l_f / v_f`` is left as is.
    """
    static = reduce_mod_2pi((fiber.n_f, omega0, fiber.l_f), CONSTANTS.c)
    dispersive = -omega * fiber.l_f / fiber.v_f
    return static, dispersive + 0.0


def transmission(eit: EitParams, omega: float) -> ChannelPair:
    """EIT amplitude transmission with beamsplitter loss port; fiber fields zero."""
    s = susceptibility(eit, omega)
    scale = propagation_scale(eit)
    t_mag = math.exp(-s.chi2 * scale)
    return ChannelPair(
        t_mag=t_mag,
        t_phase_disp=s.chi1 * scale,
        t_phase_static=eit_static_phase(eit),
        r_mag=math.sqrt(max(0.0, 1.0 - t_mag * t_mag)),
        fiber_phase_disp=0.0,
        fiber_phase_static=0.0,
        omega=float(omega),
    )


def channel_pair(config: RunConfig, omega: float) -> ChannelPair:
    a = transmission(config.eit, omega)
    static, disp = fiber_phase(config.fiber, config.eit.omega0, omega)
    return ChannelPair(
        t_mag=a.t_mag,
        t_phase_disp=a.t_phase_disp,
        t_phase_static=a.t_phase_static,
        r_mag=a.r_mag,
        fiber_phase_disp=disp,
        fiber_phase_static=static,
        omega=a.omega,
    )


def dispersion_slope(eit: EitParams) -> float:
    """Exact ``d chi1 / d omega`` at line centre."""
    k = coupling_strength(eit)
    return k * (eit.gamma_b**2 - eit.omega_c**2) / (eit.omega_c**2 + eit.gamma_b * eit.gamma_c) ** 2


def group_delay(eit: EitParams) -> float:
    """Group delay of the cell, in seconds, with a finite-difference cross-check."""
    analytic = dispersion_slope(eit)
    numeric = (chi_raw(eit, FD_STEP).real - chi_raw(eit, -FD_STEP).real) / (2 * FD_STEP)
    if analytic != 0.0 and abs(numeric - analytic) > 1e-3 * abs(analytic):
        raise DerivativeMismatch(
            f"analytic slope {analytic:.6e} vs finite difference {numeric:.6e}"
        )
    return propagation_scale(eit) * abs(analytic)


def matched_fiber_length(eit: EitParams, fiber: FiberParams) -> float:
    """Fiber length whose group delay equals that of the EIT cell."""
    return fiber.v_f * group_delay(eit)


def combined_dispersive_phase(config: RunConfig, omega: float) -> float:
    """Residual first-cosine argument ``omega l_f / v_f + chi1 omega0 z / 2c``.

    Vanishes to first order in ``omega`` for a delay-matched fiber.
    """
    ch = channel_pair(config, omega)
    return ch.t_phase_disp - ch.fiber_phase_disp


def _window_scan(eit: EitParams) -> tuple[float, float]:
    natural = eit.omega_c**2 / eit.gamma_c
    return natural / 1000, 100 * natural


def window_edges(eit: EitParams, level: float = 0.5) -> tuple[float, float]:
    """Edges of the contiguous interval around 0 with ``t_mag >= level``."""
    if not 0 < level < 1:
        raise ValueError(f"level must lie in (0, 1), got {level!r}")
    t0 = transmission(eit, 0.0).t_mag
    if t0 <= level:
        raise LevelUnreachable(f"t_mag(0) = {t0:.6g} does not exceed level {level}")

    def inside(w):
        return transmission(eit, w).t_mag - level

    step, limit = _window_scan(eit)
    edges = []
    for direction in (-1.0, 1.0):
        edge = first_edge(inside, direction, step, limit)
        if edge is None:
            raise LevelUnreachable(f"t_mag stays above {level} out to {limit:.3g} 1/s")
        edges.append(edge)
    return edges[0], edges[1]


def window_width(eit: EitParams, level: float = 0.5) -> float:
    lo, hi = window_edges(eit, level)
    return hi - lo
