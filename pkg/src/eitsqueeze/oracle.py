"""First-principles noise of the measured quadrature.

The quadrature is built by linear substitution of the OPA input-output
relations and the two channel relations into the homodyne difference
current, giving a linear combination of vacuum input operators. Its noise
then follows from vacuum moments alone. Nothing here uses the closed-form
variance expressions in :mod:`eitsqueeze.homodyne`.

Mode labels: ``o``/``e`` are the OPA input ports, ``v`` the loss port of
the EIT cell, ``w`` the loss port of a lossy delay line (only present when
one is requested). ``+``/``-`` name the sideband ``+omega``/``-omega``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .eit import channel_pair, window_edges
from .opa import bogoliubov
from .params import RunConfig

LABELS = ("o+", "o-", "e+", "e-", "v+", "v-")


def _label(mode: str, sign: int) -> str:
    return mode + ("+" if sign > 0 else "-")


@dataclass(frozen=True)
class ModeExpansion:
    """``sum_k coeff_a[k] a_k + coeff_adag[k] a_k^dag`` over input modes ``k``."""

    coeff_a: dict = field(default_factory=dict)
    coeff_adag: dict = field(default_factory=dict)

    def __add__(self, other: "ModeExpansion") -> "ModeExpansion":
        a = dict(self.coeff_a)
        for k, v in other.coeff_a.items():
            a[k] = a.get(k, 0j) + v
        adag = dict(self.coeff_adag)
        for k, v in other.coeff_adag.items():
            adag[k] = adag.get(k, 0j) + v
        return ModeExpansion(a, adag)

    def __sub__(self, other: "ModeExpansion") -> "ModeExpansion":
        return self + other.scaled(-1)

    def scaled(self, c: complex) -> "ModeExpansion":
        return ModeExpansion(
            {k: c * v for k, v in self.coeff_a.items()},
            {k: c * v for k, v in self.coeff_adag.items()},
        )

    def dagger(self) -> "ModeExpansion":
        return ModeExpansion(
            {k: v.conjugate() for k, v in self.coeff_adag.items()},
            {k: v.conjugate() for k, v in self.coeff_a.items()},
        )

    def labels(self) -> set:
        return {k for k, v in self.coeff_a.items() if v != 0} | {
            k for k, v in self.coeff_adag.items() if v != 0
        }


def _ann(label: str) -> ModeExpansion:
    return ModeExpansion({label: 1 + 0j}, {})


def _cre(label: str) -> ModeExpansion:
    return ModeExpansion({}, {label: 1 + 0j})


def noise(expansion: ModeExpansion) -> float:
    """Symmetrized vacuum second moment: (1/2) sum |c|^2 over both operator kinds."""
    total = sum(abs(v) ** 2 for v in expansion.coeff_a.values())
    total += sum(abs(v) ** 2 for v in expansion.coeff_adag.values())
    return 0.5 * total


def opa_outputs(config: RunConfig, omega: float, sign: int) -> tuple[ModeExpansion, ModeExpansion]:
    """``(D_o^out(s*omega), D_e^out(s*omega))`` in terms of OPA input operators."""
    w = sign * omega
    here = bogoliubov(config.opa, w)
    mirror = bogoliubov(config.opa, -w)
    d_o = _ann(_label("o", sign)).scaled(here.g_big) + _cre(_label("e", -sign)).scaled(here.g_small)
    # D_e^out(-w)^dag = G(w) D_e^in(-w)^dag + g(w) D_o^in(w), taken at w -> -w and conjugated
    d_e = (
        _cre(_label("e", sign)).scaled(mirror.g_big) + _ann(_label("o", -sign)).scaled(mirror.g_small)
    ).dagger()
    return d_o, d_e


def _fiber_transmission(fiber_t, sign):
    if fiber_t is None:
        return None
    if isinstance(fiber_t, tuple):
        return fiber_t[0] if sign > 0 else fiber_t[1]
    return fiber_t


def _channel_outputs(config, omega, sign, t_override, fiber_t):
    """EIT-cell output D_A and static-phase-stripped fiber output at sideband s*omega."""
    ch = channel_pair(config, sign * omega)
    t_mag = ch.t_mag if t_override is None else t_override
    r_mag = math.sqrt(max(0.0, 1.0 - t_mag * t_mag))
    d_o, d_e = opa_outputs(config, omega, sign)

    t_complex = t_mag * cmath.exp(1j * (ch.t_phase_static + ch.t_phase_disp))
    d_a = d_o.scaled(t_complex) + _ann(_label("v", sign)).scaled(1j * r_mag)

    tb = _fiber_transmission(fiber_t, sign)
    if tb is not None:
        rb = math.sqrt(max(0.0, 1.0 - tb * tb))
        d_e = d_e.scaled(tb) + _ann(_label("w", sign)).scaled(1j * rb)
    b = d_e.scaled(cmath.exp(1j * ch.fiber_phase_disp))
    return d_a, b, ch.fiber_phase_static


def _default_fiber_t(config, omega, matched):
    if not matched:
        return None
    return (channel_pair(config, omega).t_mag, channel_pair(config, -omega).t_mag)


def build_quadrature(
    config: RunConfig,
    omega: float,
    phi_lo: float,
    t_override: float | None = None,
    matched: bool = False,
) -> ModeExpansion:
    """Measured homodyne quadrature at sideband ``omega``, normalized so vacuum gives 0.5.

    ``t_override`` replaces |T| at both sidebands while keeping the physical
    phases. ``matched`` gives the delay line the same |T| as the cell, with
    its own loss port.
    """
    if matched and t_override is not None:
        fiber_t = t_override
    else:
        fiber_t = _default_fiber_t(config, omega, matched)
    d_a_p, b_p, s_f = _channel_outputs(config, omega, +1, t_override, fiber_t)
    d_a_m, b_m, _ = _channel_outputs(config, omega, -1, t_override, fiber_t)
    # the fiber output D_B = i e^{i s_f} b
    d_b_p = b_p.scaled(1j * cmath.exp(1j * s_f))
    d_b_m = b_m.scaled(1j * cmath.exp(1j * s_f))

    lo = cmath.exp(1j * phi_lo)
    inner = (d_a_m.dagger().scaled(-1j) + d_b_m.dagger()).scaled(lo) - (
        d_a_p.scaled(1j) + d_b_p
    ).scaled(1 / lo)
    return inner.scaled(0.5j)


def joint_phases(config: RunConfig, phi_lo: float) -> tuple[float, float]:
    """Per-mode phases ``(theta, phi)`` under which the measured quadrature is ``X_a - X_b``."""
    s_f = channel_pair(config, 0.0).fiber_phase_static
    return phi_lo, math.pi + phi_lo - s_f


def build_joint_quadrature(
    config: RunConfig,
    omega: float,
    theta: float,
    phi: float,
    t_override: float | None = None,
    matched: bool = False,
) -> ModeExpansion:
    """``(1/2)[(e^{i theta} a^dag(-w) + e^{-i theta} a(w)) - (e^{i phi} b^dag(-w) + e^{-i phi} b(w))]``.

    ``a`` is the EIT-cell output, ``b`` the fiber output without its
    static phase. ``(theta + pi/2, phi - pi/2)`` gives ``P_a + P_b``.
    """
    if matched and t_override is not None:
        fiber_t = t_override
    else:
        fiber_t = _default_fiber_t(config, omega, matched)
    a_p, b_p, _ = _channel_outputs(config, omega, +1, t_override, fiber_t)
    a_m, b_m, _ = _channel_outputs(config, omega, -1, t_override, fiber_t)
    xa = a_m.dagger().scaled(cmath.exp(1j * theta)) + a_p.scaled(cmath.exp(-1j * theta))
    xb = b_m.dagger().scaled(cmath.exp(1j * phi)) + b_p.scaled(cmath.exp(-1j * phi))
    return (xa - xb).scaled(0.5)


def cell_output(config: RunConfig, omega: float, t_override: float | None = None) -> ModeExpansion:
    """``D_A(omega)`` before quadrature assembly."""
    d_a, _, _ = _channel_outputs(config, omega, +1, t_override, None)
    return d_a


@dataclass
class FormulaDeviation:
    formula: str
    max_deviation: float = 0.0
    omega_at_max: float = float("nan")
    phi_at_max: float = float("nan")
    tolerance: float = 0.0
    points: int = 0

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tolerance

    def update(self, dev, omega, phi):
        self.points += 1
        if dev > self.max_deviation or math.isnan(self.omega_at_max):
            self.max_deviation = dev
            self.omega_at_max = omega
            self.phi_at_max = phi


@dataclass
class CrossCheckReport:
    deviations: dict
    rows: list  # (omega, phi_lo, formula, oracle, closed_form, deviation)

    @property
    def passed(self) -> bool:
        return all(d.passed for d in self.deviations.values())

    def summary(self) -> str:
        lines = []
        for d in self.deviations.values():
            status = "PASS" if d.passed else "FAIL"
            lines.append(
                f"{d.formula:<10} max_dev={d.max_deviation:.3e} at omega={d.omega_at_max:.6e} "
                f"phi_lo={d.phi_at_max:.6f} tol={d.tolerance:.0e} points={d.points} {status}"
            )
        return "\n".join(lines)


EXACT_TOL = 1e-10
APPROX_TOL = 1e-3


def cross_check(config: RunConfig, omega_grid, phi_grid) -> CrossCheckReport:
    """Compare oracle noise with the closed-form variances over a grid.

    The exact expression is checked everywhere; the two approximated ones
    only inside the |T| >= 0.5 transparency window.
    """
    from .homodyne import Formula, variance

    lo, hi = window_edges(config.eit, 0.5)
    devs = {
        Formula.EXACT: FormulaDeviation("exact", tolerance=EXACT_TOL),
        Formula.MISMATCHED: FormulaDeviation("mismatched", tolerance=APPROX_TOL),
        Formula.MATCHED: FormulaDeviation("matched", tolerance=APPROX_TOL),
    }
    rows = []
    for omega in omega_grid:
        omega = float(omega)
        in_window = lo <= omega <= hi
        for phi in phi_grid:
            phi = float(phi)
            plain = noise(build_quadrature(config, omega, phi))
            checks = [(Formula.EXACT, plain)]
            if in_window:
                checks.append((Formula.MISMATCHED, plain))
                checks.append((Formula.MATCHED, noise(build_quadrature(config, omega, phi, matched=True))))
            for formula, reference in checks:
                closed = variance(config, omega, formula, phi_lo=phi).variance
                dev = abs(reference - closed)
                devs[formula].update(dev, omega, phi)
                rows.append((omega, phi, formula.value, reference, closed, dev))
    return CrossCheckReport(deviations={f.value: d for f, d in devs.items()}, rows=rows)
