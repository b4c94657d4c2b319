"""Detuning and transmission sweeps with EPR classification per row."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .eit import channel_pair
from .epr import classify_point
from .errors import ComputationError
from .homodyne import Formula
from .params import PhaseMode, RunConfig


@dataclass(frozen=True)
class SpectrumRow:
    omega: float
    t_mag: float
    variance: float
    classification: str
    valid: bool = True


@dataclass(frozen=True)
class TransmissionRow:
    t_mag: float
    variance: float
    classification: str
    valid: bool = True


def sweep_spectrum(
    config: RunConfig,
    formula: Formula,
    phase_mode: PhaseMode | None = None,
    omega_grid=None,
) -> list[SpectrumRow]:
    """One row per detuning in grid order. Invalid points are flagged, not fatal."""
    grid = config.omega_grid if omega_grid is None else omega_grid
    rows = []
    for omega in grid:
        omega = float(omega)
        try:
            t_mag = channel_pair(config, omega).t_mag
            c = classify_point(config, omega, formula, phase_mode)
        except ComputationError:
            rows.append(SpectrumRow(omega, math.nan, math.nan, "invalid", valid=False))
            continue
        rows.append(SpectrumRow(omega, t_mag, c.var_x, c.level.value))
    return rows


def sweep_transmission(
    config: RunConfig,
    omega: float,
    formula: Formula,
    t_grid,
    phase_mode: PhaseMode | None = None,
) -> list[TransmissionRow]:
    """Variance against |T| at fixed detuning; phases stay those of ``omega``."""
    rows = []
    for t in t_grid:
        t = float(t)
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"transmission grid value {t!r} outside [0, 1]")
        c = classify_point(config, omega, formula, phase_mode, t)
        rows.append(TransmissionRow(t, c.var_x, c.level.value))
    return rows
