import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from paulitherm import (Case, ExampleParams, admissible, beta_bar,
                        classify_example, default_rate_split, gamma_sum,
                        gamma_sum_function, negativity_window, phi_closed,
                        phi_star, probabilities_from_rates, z_max)
from paulitherm._backend import kernels


def test_params_validation():
    ExampleParams(0.3, 0.2)
    with pytest.raises(ValueError):
        ExampleParams(0.0, 0.2)
    with pytest.raises(ValueError):
        ExampleParams(-0.1, 0.2)
    with pytest.raises(ValueError):
        ExampleParams(0.3, -0.01)
    with pytest.raises(ValueError):
        ExampleParams(0.3, math.inf)


def test_z_max_and_beta_bar():
    z = z_max()
    assert math.exp(z) == pytest.approx(1.0 + 2.0 * z, abs=1e-10)
    assert z == pytest.approx(1.256431208626, abs=1e-10)
    bb = beta_bar()
    assert bb == pytest.approx(2.0 * z * math.exp(-2.0 * z), abs=1e-12)
    assert bb == pytest.approx(0.203632188795, abs=1e-10)


def test_gamma_sum_reference_value():
    assert gamma_sum(ExampleParams(0.31, 0.23), 2.0) == pytest.approx(
        -0.0185602197, abs=1e-9)
    with pytest.raises(ValueError):
        gamma_sum(ExampleParams(0.31, 0.23), -1.0)


def test_gamma_sum_negative_exactly_inside_window():
    params = ExampleParams(0.38, 0.23)
    window = negativity_window(params)
    assert window is not None
    t1, t2 = window
    eps = 1e-6
    assert gamma_sum(params, t1 - eps) > 0.0 > gamma_sum(params, t1 + eps)
    assert gamma_sum(params, t2 - eps) < 0.0 < gamma_sum(params, t2 + eps)
    assert gamma_sum(params, t1) == pytest.approx(0.0, abs=1e-9)
    assert gamma_sum(params, t2) == pytest.approx(0.0, abs=1e-9)


def test_window_endpoints_reference_values():
    windows = {
        0.31: (1.4325, 3.3084),
        0.38: (1.1686, 2.6990),
        0.45: (0.9868, 2.2791),
    }
    for alpha, (t1, t2) in windows.items():
        win = negativity_window(ExampleParams(alpha, 0.23))
        assert win is not None
        assert win[0] == pytest.approx(t1, abs=5e-4)
        assert win[1] == pytest.approx(t2, abs=5e-4)


def test_window_closed_form_roots():
    # x_pm = (1 +/- sqrt(1 - 4 beta)) / 2 satisfy x^2 = x - beta
    params = ExampleParams(0.4, 0.21)
    win = negativity_window(params)
    assert win is not None
    for t in win:
        x = math.exp(-params.alpha * t)
        assert x * x == pytest.approx(x - params.beta, abs=1e-12)


def test_window_disappears_at_quarter():
    assert negativity_window(ExampleParams(0.4, 0.25)) is None
    assert negativity_window(ExampleParams(0.4, 0.3)) is None
    # beta = 0: the window never closes
    win = negativity_window(ExampleParams(0.4, 0.0))
    assert win is not None and math.isinf(win[1])


def test_phi_closed_matches_quadrature():
    params = ExampleParams(0.37, 0.22)
    fn = gamma_sum_function(params)
    for t in (0.3, 1.1, 2.7, 6.0):
        quad = kernels.adaptive_simpson(fn, 0.0, t, 1e-12, 48)
        assert phi_closed(params, t) == pytest.approx(quad, abs=1e-10)


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=0.05, max_value=1.5),
       st.floats(min_value=0.0, max_value=0.35),
       st.floats(min_value=0.0, max_value=8.0))
def test_phi_closed_derivative_is_gamma_sum(alpha, beta, t):
    params = ExampleParams(alpha, beta)
    h = 1e-6
    fd = (phi_closed(params, t + h) - phi_closed(params, max(t - h, 0.0)))
    fd /= (t + h) - max(t - h, 0.0)
    assert fd == pytest.approx(gamma_sum(params, t), abs=5e-6)


def test_admissible_band():
    ok, _ = admissible(ExampleParams(0.38, 0.23))
    assert ok
    ok, reason = admissible(ExampleParams(0.38, 0.15))
    assert not ok and "beta_bar" in reason
    ok, reason = admissible(ExampleParams(0.38, 0.25))
    assert not ok
    ok, reason = admissible(ExampleParams(0.38, 0.20363218879445366))
    assert not ok   # the boundary itself is out


def test_classify_example_reference_cases():
    # phi at the window endpoints against phi_star decides the case
    assert classify_example(ExampleParams(0.31, 0.23)).case is Case.III
    assert classify_example(ExampleParams(0.38, 0.23)).case is Case.II
    assert classify_example(ExampleParams(0.45, 0.23)).case is Case.I
    with pytest.raises(ValueError):
        classify_example(ExampleParams(0.38, 0.1))


def test_case_boundaries_in_alpha():
    # crossings of phi(t2) and phi(t1) through phi_star at beta = 0.23
    assert classify_example(ExampleParams(0.330, 0.23)).case is Case.III
    assert classify_example(ExampleParams(0.333, 0.23)).case is Case.II
    assert classify_example(ExampleParams(0.415, 0.23)).case is Case.II
    assert classify_example(ExampleParams(0.417, 0.23)).case is Case.I


def test_endpoint_phis_scale_inversely_with_alpha():
    # phi(t_i) = K_i / alpha at fixed beta, so each is decreasing in alpha
    beta = 0.23
    values = []
    for alpha in (0.28, 0.35, 0.42, 0.50):
        rep = classify_example(ExampleParams(alpha, beta))
        values.append((alpha, rep.phi_t1, rep.phi_t2))
        assert rep.phi_t1 > rep.phi_t2
    for (a1, p1, q1), (a2, p2, q2) in zip(values, values[1:]):
        assert p1 > p2 and q1 > q2
        assert a1 * p1 == pytest.approx(a2 * p2, rel=1e-9)
        assert a1 * q1 == pytest.approx(a2 * q2, rel=1e-9)


def test_default_rate_split_structure():
    params = ExampleParams(0.38, 0.23)
    rates = default_rate_split(params, 0.4, validate=False)
    for t in (0.2, 1.5, 4.0):
        g1, g2, g3 = rates.values(t)
        assert g1 == g2
        assert g3 == 0.4
        assert g1 + g2 == pytest.approx(gamma_sum(params, t), abs=1e-15)


def test_default_rate_split_cp_validation():
    # admissible parameters validate cleanly
    default_rate_split(ExampleParams(0.38, 0.23))
    # phi < 0 somewhere: the split is not CP and validation says which weight
    with pytest.raises(ValueError, match="p"):
        default_rate_split(ExampleParams(0.38, 0.1))


def test_split_probabilities_nonnegative_even_without_kappa():
    # p3 = (1 - 2 exp(-(phi + 2 kappa t)) + exp(-2 phi)) / 4 stays nonnegative
    # even at kappa = 0 because phi >= 0
    params = ExampleParams(0.38, 0.23)
    rates = default_rate_split(params, 0.0, validate=False)
    for t in np.linspace(0.1, 8.0, 40):
        p = probabilities_from_rates(rates, float(t))
        assert min(p.as_tuple()) >= -1e-12
