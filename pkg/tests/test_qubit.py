import math

import pytest
from hypothesis import given, strategies as st

from paulitherm import (QubitState, relative_entropy_diagonal,
                        von_neumann_entropy, xlnx)

LN2 = math.log(2.0)


def test_xlnx_edges():
    assert xlnx(0.0) == 0.0
    assert xlnx(1.0) == 0.0
    assert xlnx(0.5) == pytest.approx(-0.346573590280, abs=1e-12)
    # tiny excursions are clamped, larger ones rejected
    assert xlnx(-1e-13) == 0.0
    assert xlnx(1.0 + 1e-13) == 0.0
    with pytest.raises(ValueError):
        xlnx(-1e-6)
    with pytest.raises(ValueError):
        xlnx(1.1)


@given(st.floats(min_value=0.0, max_value=1.0))
def test_xlnx_bounds(x):
    val = xlnx(x)
    assert -1.0 / math.e - 1e-15 <= val <= 0.0


def test_state_construction():
    s = QubitState.from_zeta(0.4)
    assert s.rz == 0.4 and s.rx == 0.0 and s.ry == 0.0
    assert s.populations() == (0.7, 0.3)
    assert QubitState.z_up().populations() == (1.0, 0.0)
    assert QubitState.z_down().populations() == (0.0, 1.0)
    assert QubitState.maximally_mixed().bloch_norm == 0.0
    with pytest.raises(ValueError):
        QubitState(0.8, 0.8, 0.8)  # Bloch norm > 1


def test_is_diagonal():
    assert QubitState.from_zeta(0.2).is_diagonal()
    assert not QubitState(0.1, 0.0, 0.2).is_diagonal()


def test_entropy_reference_points():
    assert von_neumann_entropy(QubitState.z_up()) == 0.0
    assert von_neumann_entropy(QubitState.maximally_mixed()) == pytest.approx(
        LN2, abs=1e-15)
    # pure state in any direction
    n = 1.0 / math.sqrt(3.0)
    assert von_neumann_entropy(QubitState(n, n, n)) == pytest.approx(
        0.0, abs=1e-7)


@given(st.floats(min_value=-1.0, max_value=1.0))
def test_entropy_range(zeta):
    s = von_neumann_entropy(QubitState.from_zeta(zeta))
    assert -1e-15 <= s <= LN2 + 1e-15


@given(st.floats(min_value=-0.999, max_value=0.999),
       st.floats(min_value=-0.999, max_value=0.999))
def test_relative_entropy_nonnegative(za, zb):
    rho = QubitState.from_zeta(za)
    sigma = QubitState.from_zeta(zb)
    d = relative_entropy_diagonal(rho, sigma)
    assert d >= 0.0
    assert relative_entropy_diagonal(rho, rho) == pytest.approx(0.0, abs=1e-12)


def test_relative_entropy_support():
    # sigma has a zero population where rho does not: divergence
    rho = QubitState.from_zeta(0.0)
    sigma = QubitState.z_up()
    assert relative_entropy_diagonal(rho, sigma) == math.inf
    # aligned supports stay finite
    assert relative_entropy_diagonal(sigma, sigma) == 0.0


def test_relative_entropy_requires_diagonal():
    with pytest.raises(ValueError):
        relative_entropy_diagonal(QubitState(0.5, 0.0, 0.0),
                                  QubitState.from_zeta(0.2))
