"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline;
they are also collected into the terminal summary.
"""

import math

import numpy as np

from eitsqueeze import eit, epr, homodyne, oracle
from eitsqueeze.cli import reproduce_figures
from eitsqueeze.epr import EprLevel
from eitsqueeze.homodyne import Formula
from eitsqueeze.opa import bogoliubov
from eitsqueeze.params import PhaseMode, updated

OMEGA_THRESHOLD = 5e4


def _read_columns(path):
    lines = [line for line in path.read_text().splitlines() if not line.startswith("#")]
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


def _band(omegas, mask):
    inside = omegas[mask]
    return float(inside.min()), float(inside.max())


def test_criterion_01_unitarity(base, report_criterion):
    gamma = base.opa.gamma
    worst = 0.0
    for w in np.linspace(-10 * gamma, 10 * gamma, 1000):
        b = bogoliubov(base.opa, w)
        worst = max(worst, abs(abs(b.g_big) ** 2 - abs(b.g_small) ** 2 - 1.0))
    ok = worst < 1e-10
    report_criterion(1, "Bogoliubov unitarity", ok, f"max ||G|^2-|g|^2-1| = {worst:.2e} (tol 1e-10)")
    assert ok


def test_criterion_02_vacuum_fixed_point(vacuum, report_criterion):
    worst = 0.0
    for omega in np.linspace(-2e6, 2e6, 21):
        for phi in np.linspace(0, 2 * math.pi, 7):
            worst = max(worst, abs(oracle.noise(oracle.build_quadrature(vacuum, omega, phi)) - 0.5))
            worst = max(worst, abs(oracle.noise(oracle.build_quadrature(vacuum, omega, phi, matched=True)) - 0.5))
            for t in (None, 0.0, 0.25, 0.5, 0.75, 1.0):
                for formula in Formula:
                    v = homodyne.variance(vacuum, omega, formula, phi, t).variance
                    worst = max(worst, abs(v - 0.5))
    ok = worst <= 1e-12
    report_criterion(2, "vacuum fixed point", ok, f"max |V-0.5| = {worst:.2e} (tol 1e-12)")
    assert ok


def test_criterion_03_oracle_equivalence(base, report_criterion):
    width = eit.window_width(base.eit)
    omega_grid = np.linspace(-2 * width, 2 * width, 101)
    phi_grid = np.linspace(0, math.pi, 8, endpoint=False)
    report = oracle.cross_check(base, omega_grid, phi_grid)
    d = report.deviations
    ok = d["exact"].max_deviation < 1e-10 and d["mismatched"].max_deviation < 1e-3 and d["matched"].max_deviation < 1e-3
    ok = ok and d["exact"].points == 101 * 8 and d["mismatched"].points > 0
    detail = (
        f"exact {d['exact'].max_deviation:.2e} over {d['exact'].points} pts (tol 1e-10); "
        f"mismatched {d['mismatched'].max_deviation:.2e}, matched {d['matched'].max_deviation:.2e} "
        f"over {d['mismatched'].points} in-window pts (tol 1e-3)"
    )
    report_criterion(3, "oracle equivalence", ok, detail)
    assert ok


def test_criterion_04_formula_consistency(base, report_criterion):
    worst = 0.0
    for omega in np.linspace(-2e6, 2e6, 81):
        for phi in np.linspace(0, math.pi, 5):
            a = homodyne.variance_mismatched(base, omega, phi, t_mag=1.0).variance
            b = homodyne.variance_matched(base, omega, phi, t_mag=1.0).variance
            worst = max(worst, abs(a - b))
    ok = worst < 1e-12
    report_criterion(4, "mismatched = matched at |T|=1", ok, f"max diff = {worst:.2e} (tol 1e-12)")
    assert ok


def test_criterion_05_squeeze_floor(base, report_criterion):
    assert base.opa.kappa == 0.3 * base.opa.gamma
    _, r = homodyne.optimal_phase(base, 0.0, Formula.MATCHED, t_mag=1.0)
    ok = abs(r.variance - 0.03125) <= 1e-6
    report_criterion(5, "squeeze floor", ok, f"V = {r.variance:.8f} (target 0.03125 +- 1e-6)")
    assert ok


def test_criterion_06_mismatch_threshold(base, report_criterion):
    t = epr.threshold_scan(base, OMEGA_THRESHOLD, Formula.MISMATCHED, EprLevel.WEAK)
    ok = abs(t - 0.600) <= 0.005
    report_criterion(6, "mismatched weak threshold", ok, f"|T| = {t:.4f} (target 0.600 +- 0.005)")
    assert ok


def test_criterion_07_strong_thresholds(base, report_criterion):
    t_mis = epr.threshold_scan(base, OMEGA_THRESHOLD, Formula.MISMATCHED, EprLevel.STRONG)
    t_mat = epr.threshold_scan(base, OMEGA_THRESHOLD, Formula.MATCHED, EprLevel.STRONG)
    ok = abs(t_mis - 0.756) <= 0.01 and abs(t_mat - 0.730) <= 0.01
    detail = f"mismatched {t_mis:.4f} (0.756 +- 0.01), matched {t_mat:.4f} (0.730 +- 0.01)"
    report_criterion(7, "strong EPR thresholds", ok, detail)
    assert ok


def test_criterion_08_matched_universality(base, report_criterion):
    ts = np.concatenate([[1e-6, 1e-3], np.linspace(0.001, 1.0, 1000)])
    worst = max(
        homodyne.evaluate(base, OMEGA_THRESHOLD, Formula.MATCHED, PhaseMode.OPTIMIZED, t).variance for t in ts
    )
    ok = worst < 0.5
    report_criterion(8, "matched squeezing for all |T| > 0", ok, f"max V over {len(ts)} pts = {worst:.15f} (< 0.5)")
    assert ok


def test_criterion_09_delay_matching(base, report_criterion):
    length = eit.matched_fiber_length(base.eit, base.fiber)
    cfg = updated(base, l_f=length)
    worst = max(abs(eit.combined_dispersive_phase(cfg, w)) for w in np.linspace(-2e5, 2e5, 401))
    ok = abs(length - 3.04e3) <= 0.01 * 3.04e3 and worst < 0.05
    report_criterion(9, "delay matching", ok, f"l_f = {length:.2f} m (3040 +- 1%), max |phase| = {worst:.2e} rad (< 0.05)")
    assert ok


def test_criterion_10_transparency_window(base, report_criterion):
    width = eit.window_width(base.eit, 0.5)
    ok = 0.9e6 <= width <= 1.5e6
    report_criterion(10, "transparency window", ok, f"width = {width:.4e} s^-1 (in [0.9e6, 1.5e6])")
    assert ok


def test_criterion_11_figure_shapes(base, tmp_path, report_criterion):
    paths = dict((p.stem, p) for p in reproduce_figures(base, tmp_path))
    bands = {}
    for name in ("fig3a", "fig3b"):
        _, rows = _read_columns(paths[name])
        data = np.array([[float(x) for x in row[:3]] for row in rows])
        omegas, t, v = data[:, 0], data[:, 1], data[:, 2]
        bands[name] = (_band(omegas, v < 0.5), _band(omegas, t >= 0.5))
    (sq_a, win_a), (sq_b, win_b) = bands["fig3a"], bands["fig3b"]
    inside = win_a[0] < sq_a[0] and sq_a[1] < win_a[1]
    contains = sq_b[0] < win_b[0] and win_b[1] < sq_b[1]
    ok = inside and contains
    detail = (
        f"fig3a squeezing [{sq_a[0]:.3e}, {sq_a[1]:.3e}] inside window [{win_a[0]:.3e}, {win_a[1]:.3e}]; "
        f"fig3b squeezing [{sq_b[0]:.3e}, {sq_b[1]:.3e}] contains it"
    )
    report_criterion(11, "figure-shape properties", ok, detail)
    assert ok


def test_criterion_12_epr_ordering(base, report_criterion):
    results = {}
    for formula in (Formula.MISMATCHED, Formula.MATCHED):
        levels = [
            epr.classify_point(base, OMEGA_THRESHOLD, formula, PhaseMode.OPTIMIZED, t).level
            for t in np.linspace(0, 1, 201)
        ]
        ranks = [lv.rank for lv in levels]
        monotone = all(b >= a for a, b in zip(ranks, ranks[1:]))
        results[formula.value] = monotone and levels[-1] is EprLevel.STRONG and EprLevel.WEAK in levels
    # in the mismatched case the walk also starts at None
    first = epr.classify_point(base, OMEGA_THRESHOLD, Formula.MISMATCHED, PhaseMode.OPTIMIZED, 0.0).level
    ok = all(results.values()) and first is EprLevel.NONE
    report_criterion(12, "EPR ordering", ok, f"monotone none->weak->strong: {results}")
    assert ok


def test_criterion_13_determinism(base, tmp_path, report_criterion):
    first = reproduce_figures(base, tmp_path / "run1")
    second = reproduce_figures(base, tmp_path / "run2")
    same = [a.read_bytes() == b.read_bytes() for a, b in zip(first, second)]
    ok = len(first) == 4 and all(same)
    report_criterion(13, "byte-identical figures", ok, f"{sum(same)}/{len(first)} files identical")
    assert ok
