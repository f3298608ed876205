import math

from hypothesis import given, strategies as st
import numpy as np
import pytest

from oracles import erf_by_quadrature
from whichpath.fieldmeas import critical_charge_z1
from whichpath.pathinfo import (DetectionModel, distinguishability, distinguishability_from_probabilities,
                                distinguishability_mc, distinguishability_of_charge, path_probabilities)


def model(ratio, scale=1.0):
    return DetectionModel(E_u=scale * ratio, E_l=0.0, delta_E=scale)


def test_uninformative_detector():
    p = path_probabilities(model(1e-9))
    for val in (p.p_Du_u, p.p_Dl_u, p.p_Dl_l, p.p_Du_l):
        assert val == pytest.approx(0.25, abs=1e-9)


def test_perfect_detector():
    p = path_probabilities(model(1e3))
    assert p.p_Du_u == pytest.approx(0.5, abs=1e-15)
    assert p.p_Dl_l == pytest.approx(0.5, abs=1e-15)
    assert p.p_Dl_u == pytest.approx(0.0, abs=1e-15)
    assert p.p_Du_l == pytest.approx(0.0, abs=1e-15)


def test_unit_separation_probability(rng):
    p = path_probabilities(model(1.0))
    # (1/2) Phi(1/2)
    assert p.p_Du_u == pytest.approx(0.34573123063700656, abs=1e-15)
    # sampled readings on the upper path above the midpoint
    n = 10**6
    readings = rng.normal(1.0, 1.0, n)
    frac = np.count_nonzero(readings > 0.5) / n
    se = math.sqrt(frac * (1 - frac) / n)
    assert abs(0.5 * frac - p.p_Du_u) < 3 * 0.5 * se


@given(st.floats(1e-12, 1e4), st.floats(1e-6, 1e6))
def test_probabilities_sum_to_one_exactly(ratio, scale):
    p = path_probabilities(model(ratio, scale))
    assert p.total() == 1.0
    assert distinguishability_from_probabilities(p) <= 1.0


@given(st.floats(0.0, 50.0), st.floats(1e-6, 1e6))
def test_closed_form_equals_definition(ratio, scale):
    m = model(max(ratio, 1e-300), scale)
    assert distinguishability(m) == pytest.approx(distinguishability_from_probabilities(path_probabilities(m)),
                                                  abs=4e-16)


def test_known_values():
    assert distinguishability(DetectionModel(E_u=1e-300, E_l=0.0, delta_E=1.0)) == pytest.approx(0.0, abs=1e-300)
    assert distinguishability(model(1.0)) == pytest.approx(0.3829249225480262, abs=1e-15)
    assert distinguishability(model(2 * math.sqrt(2))) == pytest.approx(0.8427007929497149, abs=1e-15)


@given(st.floats(0.0, 30.0), st.floats(0.0, 30.0))
def test_monotone_in_separation(a, b):
    lo, hi = sorted((a, b))
    assert distinguishability(model(max(lo, 1e-300))) <= distinguishability(model(max(hi, 1e-300)))


@given(st.floats(0.01, 10.0), st.floats(1e-8, 1e8))
def test_rescale_invariant(ratio, s):
    assert distinguishability(model(ratio, s)) == pytest.approx(distinguishability(model(ratio)), rel=1e-12)


def test_model_validation():
    with pytest.raises(ValueError):
        DetectionModel(E_u=0.0, E_l=1.0, delta_E=1.0)
    with pytest.raises(ValueError):
        DetectionModel(E_u=1.0, E_l=0.0, delta_E=0.0)


def test_of_charge(tonomura):
    z1 = critical_charge_z1(tonomura)
    assert distinguishability_of_charge(0.0, tonomura) == 0.0
    assert distinguishability_of_charge(100 * z1, tonomura) == pytest.approx(1.0, abs=1e-12)
    assert distinguishability_of_charge(z1, tonomura) == pytest.approx(0.3829249225480262, abs=1e-15)
    # Z = 7e5 sits just below Z1 = 7.02e5
    assert distinguishability_of_charge(7e5, tonomura) == pytest.approx(0.383, abs=2e-3)
    with pytest.raises(ValueError):
        distinguishability_of_charge(-1.0, tonomura)


@pytest.mark.parametrize("ratio", [0.1, 1.0, 3.0])
def test_monte_carlo_threshold_classifier(ratio):
    est, se = distinguishability_mc(model(ratio), 10**6, np.random.default_rng(7))
    assert abs(est - distinguishability(model(ratio))) < 4 * se


def test_monte_carlo_reproducible():
    a = distinguishability_mc(model(1.0), 1000, np.random.default_rng(3))
    b = distinguishability_mc(model(1.0), 1000, np.random.default_rng(3))
    assert a == b


@pytest.mark.parametrize("ratio", np.linspace(0.0, 12.0, 49))
def test_closed_form_matches_gaussian_quadrature(ratio):
    m = model(max(ratio, 1e-300))
    assert distinguishability(m) == pytest.approx(erf_by_quadrature(ratio / (2 * math.sqrt(2))), abs=1e-12)
