"""Closed-form noise of the measured quadrature.

Three expressions are provided:

* ``EXACT``: the sideband-resolved result, with the channel evaluated
  separately at ``+omega`` and ``-omega``;
* ``MISMATCHED``: its reduction using |T(-w)| = |T(w)| and
  chi1(-w) = -chi1(w), for a lossy cell against a lossless fiber;
* ``MATCHED``: the same with both modes seeing transmission |T|.

Every expression has the form ``A + Re(C exp(-2i phi_lo))``, which is how
they are evaluated here; it also gives the optimal local-oscillator phase
in closed form. Vacuum noise is 0.5.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from ._search import first_edge
from .eit import channel_pair, chi_raw
from .errors import NoSqueezing, OutsideValidity
from .opa import bogoliubov
from .params import PhaseMode, RunConfig

SHOT_NOISE = 0.5
PARITY_RTOL = 1e-2


class Formula(str, Enum):
    EXACT = "exact"
    MISMATCHED = "mismatched"
    MATCHED = "matched"


@dataclass(frozen=True)
class VarianceResult:
    variance: float
    omega: float
    phi_lo: float
    t_mag: float
    formula: Formula


@dataclass(frozen=True)
class PhaseTerms:
    """The two cosines that select the measured quadrature."""

    cos_disp: float
    cos_lo: float


@dataclass(frozen=True)
class PhaseDecomposition:
    """``variance(phi_lo) = offset + Re(amplitude * exp(-2i phi_lo))``."""

    offset: float
    amplitude: complex
    t_mag: float

    def at(self, phi_lo: float) -> float:
        return self.offset + (self.amplitude * cmath.exp(-2j * phi_lo)).real

    @property
    def minimum(self) -> float:
        return self.offset - abs(self.amplitude)

    @property
    def best_phase(self) -> float:
        if self.amplitude == 0:
            return 0.0
        phi = 0.5 * (cmath.phase(self.amplitude) + math.pi)
        return math.fmod(phi, math.pi) % math.pi


def _check_parity(config: RunConfig, omega: float) -> None:
    plus = chi_raw(config.eit, omega)
    minus = chi_raw(config.eit, -omega)
    floor = 1e-30
    bad_abs = abs(minus.imag - plus.imag) > PARITY_RTOL * max(abs(plus.imag), floor)
    bad_disp = abs(minus.real + plus.real) > PARITY_RTOL * max(abs(plus.real), floor)
    if bad_abs or bad_disp:
        raise OutsideValidity(f"sideband parity of chi fails beyond {PARITY_RTOL:.0%} at omega={omega!r}")


def _lo_offset(ch) -> float:
    """``omega0 z / c + n_f omega0 l_f / c`` (both reduced)."""
    return ch.t_phase_static + ch.fiber_phase_static


def phase_terms(config: RunConfig, omega: float, phi_lo: float | None = None) -> PhaseTerms:
    phi_lo = config.phi_lo if phi_lo is None else phi_lo
    ch = channel_pair(config, omega)
    disp = ch.t_phase_disp - ch.fiber_phase_disp
    return PhaseTerms(cos_disp=math.cos(disp), cos_lo=math.cos(2 * phi_lo - _lo_offset(ch)))


def decompose(
    config: RunConfig, omega: float, formula: Formula, t_mag: float | None = None
) -> PhaseDecomposition:
    """Split the chosen expression into its phase-independent and phase-dependent parts.

    ``t_mag`` overrides |T| while the phases keep their physical values.
    """
    formula = Formula(formula)
    b = bogoliubov(config.opa, omega)
    big2, small2 = abs(b.g_big) ** 2, abs(b.g_small) ** 2
    cross = b.g_small * b.g_big.conjugate()
    plus = channel_pair(config, omega)

    if formula is Formula.EXACT:
        minus = channel_pair(config, -omega)
        tp = plus.t_mag if t_mag is None else t_mag
        tm = minus.t_mag if t_mag is None else t_mag
        loss = 1.0 - tp * tp
        offset = 0.25 * (loss + big2 * (1 + tp * tp) + small2 * (1 + tm * tm))
        # phi_d(-w) + arg T(w) and phi_d(w) + arg T(-w)
        psi_1 = minus.fiber_phase_static + minus.fiber_phase_disp + plus.t_phase_static + plus.t_phase_disp
        psi_2 = plus.fiber_phase_static + plus.fiber_phase_disp + minus.t_phase_static + minus.t_phase_disp
        amplitude = 0.5 * cross * (tp * cmath.exp(1j * psi_1) + tm * cmath.exp(1j * psi_2))
        return PhaseDecomposition(offset, amplitude, tp)

    _check_parity(config, omega)
    t = plus.t_mag if t_mag is None else t_mag
    cos_disp = math.cos(plus.t_phase_disp - plus.fiber_phase_disp)
    # g G* is carried as a complex factor: its phase joins the LO cosine
    lo = cmath.exp(1j * _lo_offset(plus))
    if formula is Formula.MISMATCHED:
        offset = 0.25 * ((1 - t * t) + (big2 + small2) * (1 + t * t))
        amplitude = t * cross * cos_disp * lo
    else:
        offset = 0.5 * ((1 - t * t) + (big2 + small2) * t * t)
        amplitude = t * t * cross * cos_disp * lo
    return PhaseDecomposition(offset, amplitude, t)


def variance(
    config: RunConfig,
    omega: float,
    formula: Formula,
    phi_lo: float | None = None,
    t_mag: float | None = None,
) -> VarianceResult:
    phi_lo = config.phi_lo if phi_lo is None else phi_lo
    d = decompose(config, omega, formula, t_mag)
    return VarianceResult(
        variance=d.at(phi_lo), omega=float(omega), phi_lo=phi_lo, t_mag=d.t_mag, formula=Formula(formula)
    )


def variance_exact(config, omega, phi_lo=None, t_mag=None) -> VarianceResult:
    return variance(config, omega, Formula.EXACT, phi_lo, t_mag)


def variance_mismatched(config, omega, phi_lo=None, t_mag=None) -> VarianceResult:
    return variance(config, omega, Formula.MISMATCHED, phi_lo, t_mag)


def variance_matched(config, omega, phi_lo=None, t_mag=None) -> VarianceResult:
    return variance(config, omega, Formula.MATCHED, phi_lo, t_mag)


def optimal_phase(
    config: RunConfig, omega: float, formula: Formula, t_mag: float | None = None
) -> tuple[float, VarianceResult]:
    """LO phase in [0, pi) minimizing the variance, and the variance there."""
    d = decompose(config, omega, formula, t_mag)
    phi = d.best_phase
    result = VarianceResult(
        variance=d.at(phi), omega=float(omega), phi_lo=phi, t_mag=d.t_mag, formula=Formula(formula)
    )
    return phi, result


def evaluate(
    config: RunConfig,
    omega: float,
    formula: Formula,
    phase_mode: PhaseMode | None = None,
    t_mag: float | None = None,
) -> VarianceResult:
    """Variance at the configured LO phase (``FIXED``) or the best one (``OPTIMIZED``)."""
    mode = PhaseMode(phase_mode or config.phase_mode)
    if mode is PhaseMode.OPTIMIZED:
        return optimal_phase(config, omega, formula, t_mag)[1]
    return variance(config, omega, formula, config.phi_lo, t_mag)


def squeezing_band(
    config: RunConfig, formula: Formula, phase_mode: PhaseMode | None = None
) -> tuple[float, float]:
    """Edges of the contiguous detuning interval around 0 with variance below 0.5."""
    v0 = evaluate(config, 0.0, formula, phase_mode).variance
    if v0 >= SHOT_NOISE:
        raise NoSqueezing(f"variance at line centre is {v0:.6g} >= {SHOT_NOISE}")

    def inside(w):
        return SHOT_NOISE - evaluate(config, w, formula, phase_mode).variance

    natural = config.eit.omega_c**2 / config.eit.gamma_c
    edges = []
    for direction in (-1.0, 1.0):
        edge = first_edge(inside, direction, natural / 1000, 100 * natural)
        if edge is None:
            raise NoSqueezing("squeezing band does not close within the scan range")
        edges.append(edge)
    return edges[0], edges[1]
