import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from oracles import rk4
from whichpath.experiment import ExperimentConfig, flight_time
from whichpath.gravity import (GravityDetector, IntegrationError, critical_mass, detector_response,
                               detector_response_numeric, eta_accuracy_bound, fringe_vs_planck,
                               phi_pp_accuracy_leading, point_mass_phi_prime, quadratic_phi_prime,
                               required_phi_pp_accuracy)
from whichpath.units import constants

K = constants()
DET = GravityDetector(S=1.0, omega=10.0, R=6.0)


def test_response_values():
    phi_pp = 2.5
    assert detector_response(DET, phi_pp, 0.0) == 0.0
    # omega t = pi gives the maximum 2 phi'' S / omega^2
    assert detector_response(DET, phi_pp, math.pi / DET.omega) == pytest.approx(-2 * phi_pp / 100, rel=1e-15)
    with pytest.raises(ValueError):
        detector_response(DET, phi_pp, -1.0)


@given(st.floats(0.0, 1e3))
def test_response_small_time(t):
    # below the quadratic short-time form, equal to it as t -> 0
    eta = detector_response(DET, 1.0, t * 1e-6)
    assert -eta <= 0.5 * (t * 1e-6) ** 2 * (1 + 1e-12)
    # next term is -(omega t)^2 / 12 relative
    assert -eta == pytest.approx(0.5 * (t * 1e-6) ** 2, rel=1e-5)


def test_response_matches_rk4():
    phi_pp = 3.0
    h = 1e-3 / DET.omega
    f = lambda t, y: np.array([y[1], -DET.omega**2 * y[0] - phi_pp * DET.S])
    t, y = rk4(f, np.zeros(2), 20.0 / DET.omega, h)
    closed = detector_response(DET, phi_pp, t)
    err = np.max(np.abs(y[:, 0] - closed)) / np.max(np.abs(closed))
    assert err < 1e-8


@given(st.floats(0.0, 30.0), st.floats(0.1, 100.0), st.floats(-10.0, 10.0))
def test_response_solves_ode(wt, omega, phi_pp):
    det = GravityDetector(S=2.0, omega=omega, R=1.0)
    t = wt / omega
    h = 1e-4 / omega
    eta = lambda s: detector_response(det, phi_pp, s)
    second = (eta(t + 2 * h) - 2 * eta(t + h) + eta(t)) / h**2
    resid = second + omega**2 * eta(t + h) + phi_pp * det.S
    assert abs(resid) <= 1e-5 * abs(phi_pp) * det.S + 1e-12


def test_numeric_zero_and_linear_potential():
    t = np.linspace(0.0, 20.0 / DET.omega, 50)
    assert np.all(detector_response_numeric(DET, lambda x: 0.0, t) == 0.0)
    eta = detector_response_numeric(DET, quadratic_phi_prime(0.0, slope=981.0), t)
    assert np.max(np.abs(eta)) <= 1e-12 * DET.S


def test_numeric_quadratic_is_shifted_oscillator():
    """phi'' (S + eta) feeds back into the mode: frequency sqrt(omega^2 + phi'')."""
    phi_pp = 1e-2 * DET.omega**2
    t = np.linspace(0.0, 20.0 / DET.omega, 201)
    eta = detector_response_numeric(DET, quadratic_phi_prime(phi_pp, x0=DET.x0), t)
    w = math.sqrt(DET.omega**2 + phi_pp)
    exact = -phi_pp * DET.S * (1 - np.cos(w * t)) / w**2
    assert np.max(np.abs(eta - exact)) <= 1e-9 * np.max(np.abs(exact))


def test_numeric_first_order_agreement():
    wt = np.linspace(1e-3, math.pi, 300)
    t = wt / DET.omega
    eps = 1e-6
    phi_pp = eps * DET.omega**2
    eta = detector_response_numeric(DET, quadratic_phi_prime(phi_pp), t)
    lin = detector_response(DET, phi_pp, t)
    assert np.max(np.abs(eta / lin - 1)) <= 1e-6
    # beyond half a period the phase drift is still first order in eps
    t = np.linspace(0.0, 20.0, 400) / DET.omega
    drift = []
    for eps in (1e-4, 5e-5):
        phi_pp = eps * DET.omega**2
        eta = detector_response_numeric(DET, quadratic_phi_prime(phi_pp), t)
        lin = detector_response(DET, phi_pp, t)
        drift.append(np.max(np.abs(eta - lin)) / np.max(np.abs(lin)))
    assert drift[0] / drift[1] == pytest.approx(2.0, rel=0.02)
    assert drift[0] < 10 * 1e-4


def test_numeric_point_mass_far_away():
    m, R = 1e3, 1e4
    det = GravityDetector(S=1.0, omega=10.0, R=R, x0=0.0)
    t = np.linspace(0.0, math.pi / det.omega, 40)[1:]
    eta = detector_response_numeric(det, point_mass_phi_prime(m, -R), t)
    # phi'' = -2 G m / r^3 at the midpoint
    lin = detector_response(det, -2 * K.G * m / R**3, t)
    assert np.max(np.abs(eta / lin - 1)) < 1e-6


def test_numeric_unsorted_times_and_errors(monkeypatch):
    t = np.array([0.3, 0.0, 0.1])
    eta = detector_response_numeric(DET, quadratic_phi_prime(1e-6), t)
    assert eta[1] == 0.0
    assert eta == pytest.approx(detector_response(DET, 1e-6, t), rel=1e-6, abs=1e-30)
    assert np.all(detector_response_numeric(DET, quadratic_phi_prime(1.0), 0.0) == 0.0)
    with pytest.raises(ValueError):
        detector_response_numeric(DET, quadratic_phi_prime(1.0), [-1.0])

    from whichpath import gravity

    class Failed:
        success = False
        message = "step size too small"

    monkeypatch.setattr(gravity, "solve_ivp", lambda *a, **k: Failed())
    with pytest.raises(IntegrationError, match="step size"):
        detector_response_numeric(DET, quadratic_phi_prime(1.0), [1.0])


def test_detector_validation():
    with pytest.raises(ValueError):
        GravityDetector(S=0.0, omega=1.0, R=1.0)
    with pytest.raises(ValueError):
        GravityDetector(S=1.0, omega=math.nan, R=1.0)


def test_point_mass_field():
    f = point_mass_phi_prime(2.0, 1.0, G=1.0)
    assert f(3.0) == pytest.approx(0.5)
    assert f(-1.0) == pytest.approx(-0.5)


def test_phi_pp_difference():
    assert required_phi_pp_accuracy(1.0, 1.0, 1.0, G=1.0) == pytest.approx(7 / 4, rel=1e-15)
    direct = 2 * (1 / 2.0**3 - 1 / 2.5**3)
    assert required_phi_pp_accuracy(1.0, 2.0, 0.5, G=1.0) == pytest.approx(direct, rel=1e-14)


@given(st.floats(1e-3, 1e3), st.floats(1e-9, 1e-2))
def test_phi_pp_leading_term(R, ratio):
    d = ratio * R
    exact = required_phi_pp_accuracy(1.0, R, d)
    lead = phi_pp_accuracy_leading(1.0, R, d)
    assert abs(exact - lead) / lead <= 2 * d / R + 1e-12


def test_critical_mass(tonomura):
    assert K.planck_mass == pytest.approx(2e-5, rel=0.1)
    assert K.planck_mass == pytest.approx(2.176434e-5, rel=1e-5)
    m = critical_mass(tonomura)
    assert 0.5 < m < 2.0
    assert m == pytest.approx(6.0 / 1e-4 * K.planck_mass, rel=1e-15)
    assert critical_mass(tonomura, delta_eta=2 * K.planck_length) == pytest.approx(2 * m, rel=1e-15)


def test_fringe_vs_planck_tonomura(tonomura):
    res = fringe_vs_planck(tonomura, critical_mass(tonomura))
    assert res.detectable and res.within_bound
    assert res.ratio_to_planck_length == pytest.approx(res.bound, rel=1e-12)
    assert res.bound == pytest.approx(K.c * flight_time(tonomura) / tonomura.R, rel=1e-15)
    light = fringe_vs_planck(tonomura, 1e-3)
    assert not light.detectable and not light.within_bound
    with pytest.raises(ValueError):
        fringe_vs_planck(tonomura, 0.0)


def test_fringe_vs_planck_many_configurations(quiet_geometry):
    rng = np.random.default_rng(11)
    for _ in range(10_000):
        d = 10 ** rng.uniform(-6, -1)
        L = 10 ** rng.uniform(-1, 3)
        R = d * 10 ** rng.uniform(2, 8)
        v = K.c * 10 ** rng.uniform(-4, -0.01)
        cfg = ExperimentConfig(d=d, L=L, R=R, v=v)
        m = critical_mass(cfg) * 10 ** rng.uniform(0, 6)
        res = fringe_vs_planck(cfg, m)
        assert res.detectable
        assert res.within_bound


@given(st.floats(1e-3, 1e6), st.floats(1e-2, 1e3), st.floats(1e-8, 1e-2), st.floats(1e-3, 0.999))
def test_eta_bound_chain(m, R, ratio, frac):
    # S (cT)^2 < R^3 puts the reachable signal under the ceiling
    d = ratio * R
    T = 1e-10 * R / K.c
    S = frac * R**3 / (K.c * T) ** 2
    signal, ceiling = eta_accuracy_bound(m, R, d, S, T)
    assert signal <= ceiling * (1 + 1e-12)
    assert signal == pytest.approx(frac * ceiling, rel=1e-12)
    # the closed-form response never exceeds the reachable signal scale
    det = GravityDetector(S=S, omega=1e3 / T, R=R)
    eta = detector_response(det, phi_pp_accuracy_leading(m, R, d) / 6, np.linspace(0, T, 50))
    assert np.max(np.abs(eta)) <= 0.5 * signal * (1 + 1e-12)
