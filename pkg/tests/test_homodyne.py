import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import minimize_scalar

from eitsqueeze import eit, homodyne
from eitsqueeze.errors import NoSqueezing, OutsideValidity
from eitsqueeze.homodyne import Formula
from eitsqueeze.params import PhaseMode, updated

FORMULAS = list(Formula)


@pytest.mark.parametrize("formula", FORMULAS)
def test_vacuum_fixed_point(vacuum, formula):
    for omega in (0.0, 5e4, -7e5):
        for t in (None, 0.0, 0.42, 1.0):
            for phi in (0.0, 1.0, 2.4):
                v = homodyne.variance(vacuum, omega, formula, phi, t).variance
                assert abs(v - 0.5) < 1e-12


def test_exact_equals_mismatched_at_centre(base):
    for phi in np.linspace(0, math.pi, 7):
        e = homodyne.variance_exact(base, 0.0, phi).variance
        m = homodyne.variance_mismatched(base, 0.0, phi).variance
        assert abs(e - m) < 1e-12


def test_unit_transmission_formulas_coincide(base):
    for omega in np.linspace(-1e6, 1e6, 21):
        for phi in (0.2, 2.4):
            a = homodyne.variance_mismatched(base, omega, phi, t_mag=1.0).variance
            b = homodyne.variance_matched(base, omega, phi, t_mag=1.0).variance
            assert abs(a - b) < 1e-12


def test_blocked_mode(base):
    # (1/4)(1 + G^2 + g^2) with G = 2.125, g = 1.875
    for phi in (0.0, 1.7):
        v = homodyne.variance_mismatched(base, 0.0, phi, t_mag=0.0).variance
        assert v == pytest.approx(0.25 * 9.03125, rel=1e-14)


def test_mismatch_threshold_at_centre(base):
    # (1/4)[9.03125 + 7.03125 T^2 - 15.9375 T] = 0.5 at T = 0.6
    _, r = homodyne.optimal_phase(base, 0.0, Formula.MISMATCHED, t_mag=0.6)
    assert r.variance == pytest.approx(0.5, abs=1e-6)


def test_matched_floor(base):
    _, r = homodyne.optimal_phase(base, 0.0, Formula.MATCHED, t_mag=1.0)
    assert r.variance == pytest.approx(0.03125, abs=1e-12)


def test_matched_closed_form(base):
    for t in (0.1, 0.5, 0.9):
        _, r = homodyne.optimal_phase(base, 0.0, Formula.MATCHED, t_mag=t)
        assert r.variance == pytest.approx(0.5 - 0.46875 * t * t, abs=1e-12)
    _, r = homodyne.optimal_phase(base, 0.0, Formula.MATCHED, t_mag=0.5)
    assert r.variance == pytest.approx(0.3828, abs=1e-4)


def test_matched_vacuum_any_t(vacuum):
    for t in np.linspace(0, 1, 11):
        assert homodyne.variance_matched(vacuum, 1e5, 0.7, t_mag=t).variance == pytest.approx(0.5, abs=1e-15)


def _brute_force_min(config, omega, formula, n=10_000):
    def f(p):
        return homodyne.variance(config, omega, formula, p).variance

    phis = np.linspace(0, math.pi, n, endpoint=False)
    vals = np.array([f(p) for p in phis])
    i = int(np.argmin(vals))
    step = math.pi / n
    res = minimize_scalar(f, bounds=(phis[i] - step, phis[i] + step), method="bounded", options={"xatol": 1e-12})
    return min(res.fun, vals[i])


@pytest.mark.parametrize("formula", FORMULAS)
@pytest.mark.parametrize("omega", [0.0, 5e4, 3e5])
def test_optimal_phase_matches_scan(base, formula, omega):
    phi, r = homodyne.optimal_phase(base, omega, formula)
    assert 0 <= phi < math.pi
    assert r.variance == pytest.approx(_brute_force_min(base, omega, formula), abs=1e-9)


def test_optimal_phase_vacuum(vacuum):
    phi, r = homodyne.optimal_phase(vacuum, 1e5, Formula.EXACT)
    assert phi == 0.0
    assert r.variance == pytest.approx(0.5, abs=1e-15)


@pytest.mark.parametrize("formula", FORMULAS)
def test_sinusoidal_phase_dependence(base, formula):
    phis = np.linspace(0, 2 * math.pi, 100)
    v = np.array([homodyne.variance(base, 2e5, formula, p).variance for p in phis])
    basis = np.column_stack([np.ones_like(phis), np.cos(2 * phis), np.sin(2 * phis)])
    coef, *_ = np.linalg.lstsq(basis, v, rcond=None)
    assert np.max(np.abs(basis @ coef - v)) < 1e-9


@settings(max_examples=200, deadline=None)
@given(
    omega=st.floats(min_value=-1e6, max_value=1e6),
    phi=st.floats(min_value=0, max_value=2 * math.pi),
    t=st.one_of(st.none(), st.floats(min_value=0, max_value=1)),
)
def test_loss_port_floor(omega, phi, t):
    from eitsqueeze.params import default_paper_params

    cfg = default_paper_params()
    r = homodyne.variance_mismatched(cfg, omega, phi, t)
    assert r.variance >= 0
    assert r.variance >= (1 - r.t_mag**2) / 4 - 1e-15


def test_phase_terms_bounded(base):
    for omega in np.linspace(-2e6, 2e6, 41):
        p = homodyne.phase_terms(base, omega)
        assert -1 <= p.cos_disp <= 1 and -1 <= p.cos_lo <= 1


def test_phase_terms_reproduce_mismatched(base):
    # (1/4)[(1-T^2) + (G^2+g^2)(1+T^2) + 4 T g G* cos cos]
    from eitsqueeze.opa import bogoliubov

    for omega in (0.0, 5e4, 4e5):
        p = homodyne.phase_terms(base, omega)
        b = bogoliubov(base.opa, omega)
        t = eit.channel_pair(base, omega).t_mag
        gg = (b.g_small * b.g_big.conjugate()).real
        expected = 0.25 * ((1 - t * t) + (abs(b.g_big) ** 2 + abs(b.g_small) ** 2) * (1 + t * t) + 4 * t * gg * p.cos_disp * p.cos_lo)
        assert homodyne.variance_mismatched(base, omega).variance == pytest.approx(expected, abs=1e-12)


def test_outside_validity(base, monkeypatch):
    real = eit.chi_raw

    def lopsided(eit_params, omega):
        chi = real(eit_params, omega)
        return chi * (1.5 if omega < 0 else 1.0)

    monkeypatch.setattr(homodyne, "chi_raw", lopsided)
    with pytest.raises(OutsideValidity):
        homodyne.variance_mismatched(base, 3e5)
    homodyne.variance_exact(base, 3e5)


def test_mismatched_band_inside_window(base):
    lo, hi = homodyne.squeezing_band(base, Formula.MISMATCHED, PhaseMode.OPTIMIZED)
    wlo, whi = eit.window_edges(base.eit, 0.5)
    assert wlo < lo < 0 < hi < whi
    assert homodyne.evaluate(base, hi, Formula.MISMATCHED, PhaseMode.OPTIMIZED).variance == pytest.approx(0.5, abs=1e-9)


def test_matched_band_exceeds_window(base):
    lo, hi = homodyne.squeezing_band(base, Formula.MATCHED, PhaseMode.OPTIMIZED)
    wlo, whi = eit.window_edges(base.eit, 0.5)
    assert lo < wlo and hi > whi


def test_no_squeezing_without_pump(vacuum):
    with pytest.raises(NoSqueezing):
        homodyne.squeezing_band(vacuum, Formula.MISMATCHED, PhaseMode.OPTIMIZED)


def test_fixed_phase_uses_config(base):
    r = homodyne.evaluate(base, 1e5, Formula.MATCHED, PhaseMode.FIXED)
    assert r.phi_lo == base.phi_lo
    cfg = updated(base, phase_mode="optimized")
    assert homodyne.evaluate(cfg, 1e5, Formula.MATCHED).variance <= r.variance
