"""Physical constants, model parameters and run configuration.

Units: every rate and detuning is an angular quantity in 1/s. The quoted
"MHz"/"Hz" values of the reference setup are used at face value
(20 MHz -> 2.0e7 1/s), while ``omega0`` is the true optical angular
frequency 2*pi*c/lambda.

Config files are flat ``key = value`` text with ``#`` comments::

    # stronger pump
    kappa = 1.0e7
    phase_mode = optimized
"""

from __future__ import annotations

import dataclasses
import hashlib
import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

import numpy as np

from .errors import InvalidParam, ParseError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 1.0546e-34  # J s
    epsilon0: float = 8.854e-12  # F/m
    c: float = 2.9979e8  # m/s


CONSTANTS = PhysicalConstants()

RB_D1_WAVELENGTH = 795e-9  # m


class PhaseMode(str, Enum):
    FIXED = "fixed"
    OPTIMIZED = "optimized"


@dataclass(frozen=True)
class OpaParams:
    """Cavity damping rate ``gamma`` and pump coupling ``kappa`` (both 1/s)."""

    gamma: float
    kappa: float


@dataclass(frozen=True)
class EitParams:
    n_density: float  # atoms / m^3
    mu_ac: float  # C m
    omega_c: float  # control Rabi frequency, 1/s
    gamma_b: float  # 1/s
    gamma_c: float  # 1/s
    z: float  # cell length, m
    omega0: float  # carrier, rad/s


@dataclass(frozen=True)
class FiberParams:
    n_f: float
    v_f: float  # group velocity, m/s
    l_f: float  # m


@dataclass(frozen=True)
class RunConfig:
    opa: OpaParams
    eit: EitParams
    fiber: FiberParams
    phi_lo: float
    omega_grid: tuple = ()
    phase_mode: PhaseMode = PhaseMode.FIXED


# flat config key -> section attribute on RunConfig (None: top-level field)
_SECTIONS = {
    "gamma": "opa",
    "kappa": "opa",
    "n_density": "eit",
    "mu_ac": "eit",
    "omega_c": "eit",
    "gamma_b": "eit",
    "gamma_c": "eit",
    "z": "eit",
    "omega0": "eit",
    "n_f": "fiber",
    "v_f": "fiber",
    "l_f": "fiber",
    "phi_lo": None,
    "phase_mode": None,
}
CONFIG_KEYS = tuple(_SECTIONS)


def default_paper_params() -> RunConfig:
    """Parameter set of the reference Rb-vapour / fiber-delay experiment."""
    gamma = 4.0e7
    return RunConfig(
        opa=OpaParams(gamma=gamma, kappa=0.6 * gamma / 2),
        eit=EitParams(
            n_density=2.7e17,
            mu_ac=1.46e-29,
            omega_c=2.0e7,
            gamma_b=1.0e4,
            gamma_c=6 * math.pi * 1e6,
            z=0.05,
            omega0=TWO_PI * CONSTANTS.c / RB_D1_WAVELENGTH,
        ),
        fiber=FiberParams(n_f=1.5, v_f=1.0e8, l_f=3.04e3),
        phi_lo=2.4,
        omega_grid=tuple(np.linspace(-2e6, 2e6, 401).tolist()),
        phase_mode=PhaseMode.FIXED,
    )


def get_value(config: RunConfig, key: str):
    section = _SECTIONS[key]
    owner = config if section is None else getattr(config, section)
    return getattr(owner, key)


def updated(config: RunConfig, **values) -> RunConfig:
    """Return a copy of ``config`` with flat keys replaced (no validation)."""
    sections: dict[str, dict] = {}
    top = {}
    for key, value in values.items():
        if key == "omega_grid":
            top[key] = tuple(float(w) for w in value)
            continue
        if key not in _SECTIONS:
            raise KeyError(key)
        section = _SECTIONS[key]
        if section is None:
            top[key] = PhaseMode(value) if key == "phase_mode" else value
        else:
            sections.setdefault(section, {})[key] = value
    for section, fields in sections.items():
        top[section] = dataclasses.replace(getattr(config, section), **fields)
    return dataclasses.replace(config, **top)


@dataclass(frozen=True)
class Violation:
    field: str
    value: object
    bound: str

    def __str__(self):
        return f"{self.field} = {self.value!r} violates {self.bound}"


def check(config: RunConfig, constants: PhysicalConstants = CONSTANTS) -> list[Violation]:
    """Collect every invariant violation in ``config``."""
    out: list[Violation] = []

    numeric = [k for k in CONFIG_KEYS if k != "phase_mode"]
    for key in numeric:
        value = get_value(config, key)
        if not isinstance(value, (int, float)) or not math.isfinite(value):
            out.append(Violation(key, value, "finite real number"))
    if out:
        return out

    opa, eit, fiber = config.opa, config.eit, config.fiber
    if opa.gamma <= 0:
        out.append(Violation("gamma", opa.gamma, "gamma > 0"))
    if opa.kappa < 0:
        out.append(Violation("kappa", opa.kappa, "kappa >= 0"))
    elif opa.kappa >= opa.gamma / 2:
        out.append(Violation("kappa", opa.kappa, "amplifier threshold kappa < gamma/2"))

    for key in ("n_density", "mu_ac", "omega_c", "gamma_b", "gamma_c", "z", "omega0"):
        value = getattr(eit, key)
        if value <= 0:
            out.append(Violation(key, value, f"{key} > 0"))
    if 0 < eit.gamma_c <= eit.gamma_b:
        out.append(Violation("gamma_b", eit.gamma_b, "gamma_b < gamma_c"))

    if fiber.n_f < 1:
        out.append(Violation("n_f", fiber.n_f, "n_f >= 1"))
    if not 0 < fiber.v_f <= constants.c:
        out.append(Violation("v_f", fiber.v_f, f"0 < v_f <= c = {constants.c}"))
    if fiber.l_f < 0:
        out.append(Violation("l_f", fiber.l_f, "l_f >= 0"))

    grid = np.asarray(config.omega_grid, dtype=float)
    if grid.size and not np.all(np.isfinite(grid)):
        out.append(Violation("omega_grid", "<non-finite>", "finite values"))
    elif grid.size > 1 and not np.all(np.diff(grid) > 0):
        out.append(Violation("omega_grid", "<not increasing>", "strictly increasing"))

    if not isinstance(config.phase_mode, PhaseMode):
        out.append(Violation("phase_mode", config.phase_mode, "fixed | optimized"))
    return out


def validate(config: RunConfig) -> RunConfig:
    """Check all invariants and return the config with ``phi_lo`` reduced to [0, 2pi).

    Raises :class:`InvalidParam` listing every violation.
    """
    violations = check(config)
    if violations:
        raise InvalidParam(violations)
    phi = math.fmod(config.phi_lo, TWO_PI)
    if phi < 0:
        phi += TWO_PI
    if phi >= TWO_PI:
        phi = 0.0
    return dataclasses.replace(config, phi_lo=phi)


def _parse_value(key: str, raw: str, line):
    if key == "phase_mode":
        try:
            return PhaseMode(raw.strip().lower())
        except ValueError:
            raise ParseError(line, f"phase_mode must be 'fixed' or 'optimized', got {raw!r}") from None
    try:
        return float(raw)
    except ValueError:
        raise ParseError(line, f"{key}: malformed number {raw!r}") from None


def load_config(text: str, overrides: Mapping[str, str] | None = None) -> RunConfig:
    """Parse a flat ``key = value`` document, apply overrides, validate.

    Missing keys fall back to :func:`default_paper_params`.
    """
    values: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ParseError(lineno, f"expected 'key = value', got {body!r}")
        key, raw = (part.strip() for part in body.split("=", 1))
        if key not in _SECTIONS:
            raise ParseError(lineno, f"unknown key {key!r}")
        if key in values:
            raise ParseError(lineno, f"duplicate key {key!r}")
        values[key] = _parse_value(key, raw, lineno)

    for key, raw in (overrides or {}).items():
        if key not in _SECTIONS:
            raise ParseError(None, f"unknown key {key!r}")
        values[key] = _parse_value(key, raw, None)

    return validate(updated(default_paper_params(), **values))


def parse_assignment(item: str) -> tuple[str, str]:
    """Split a ``key=value`` command-line override."""
    if "=" not in item:
        raise ParseError(None, f"expected key=value, got {item!r}")
    key, raw = item.split("=", 1)
    return key.strip(), raw.strip()


def dump_config(config: RunConfig) -> str:
    """Serialize to the config-file format; ``repr`` keeps floats bit-exact."""
    lines = []
    for key in CONFIG_KEYS:
        value = get_value(config, key)
        if key == "phase_mode":
            lines.append(f"{key} = {PhaseMode(value).value}")
        else:
            lines.append(f"{key} = {float(value)!r}")
    return "\n".join(lines) + "\n"


def config_hash(config: RunConfig) -> str:
    return hashlib.sha256(dump_config(config).encode("utf-8")).hexdigest()
