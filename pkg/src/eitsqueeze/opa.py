"""Bogoliubov coefficients of a single-port, below-threshold cavity OPA."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateDenominator
from .params import OpaParams


@dataclass(frozen=True)
class BogoliubovPair:
    """``D_out(w) = g_big * D_in(w) + g_small * D_in'^dag(-w)`` at sideband ``omega``."""

    g_big: complex
    g_small: complex
    omega: float


def bogoliubov(opa: OpaParams, omega: float) -> BogoliubovPair:
    # Evaluated as written, without simplification, so |G|^2 - |g|^2 = 1
    # stays a genuine check rather than an identity of the code.
    half = opa.gamma / 2
    m = (half - 1j * omega) ** 2 - opa.kappa**2
    if abs(m) < 1e-300:
        raise DegenerateDenominator(f"OPA denominator vanishes at omega={omega!r}")
    g_big = (opa.kappa**2 + (half + 1j * omega) * (half - 1j * omega)) / m
    g_small = opa.kappa * opa.gamma / m
    return BogoliubovPair(g_big=complex(g_big), g_small=complex(g_small), omega=float(omega))


def squeeze_floor(opa: OpaParams) -> float:
    """Lowest two-mode variance the source allows: lossless, line centre, best phase."""
    b = bogoliubov(opa, 0.0)
    return 0.5 * abs(b.g_big - b.g_small) ** 2
