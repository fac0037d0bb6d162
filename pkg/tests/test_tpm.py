import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from paulitherm import (TPMSetup, entropy_distribution, joint_distribution,
                        mean_and_variance, moment_closed_form, moment_oracle)

zeta_strategy = st.floats(min_value=-1.0, max_value=1.0)
lam_strategy = st.floats(min_value=1e-3, max_value=1.0)


def test_setup_validation():
    s = TPMSetup.from_zeta(0.4, 0.8)
    assert s.zeta0 == 0.4 and s.lam == 0.8
    assert s.initial_populations() == (0.7, 0.3)
    q0, q1 = s.final_populations()
    assert q0 == pytest.approx(0.5 * (1.0 + 0.32), abs=1e-15)
    assert q0 + q1 == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ValueError):
        TPMSetup.from_zeta(0.4, 0.0)   # non-invertible z sector
    with pytest.raises(ValueError):
        TPMSetup.from_zeta(0.4, -0.2)
    with pytest.raises(ValueError):
        TPMSetup.from_zeta(0.4, 1.01)
    with pytest.raises(ValueError):
        TPMSetup.from_zeta(1.5, 0.5)   # bias outside [-1, 1]


@given(zeta_strategy, lam_strategy)
def test_joint_distribution_is_a_distribution(zeta0, lam):
    j = joint_distribution(TPMSetup.from_zeta(zeta0, lam))
    assert j.shape == (2, 2)
    assert np.all(j >= -1e-15)
    assert j.sum() == pytest.approx(1.0, abs=1e-12)
    # row marginals are the initial populations
    assert j.sum(axis=1) == pytest.approx([0.5 * (1 + zeta0), 0.5 * (1 - zeta0)],
                                          abs=1e-12)


def test_reference_distribution():
    # zeta0 = 1, lam = 1/2: two atoms with known closed forms
    dist = entropy_distribution(TPMSetup.from_zeta(1.0, 0.5))
    assert len(dist.atoms) == 2
    (v1, w1), (v2, w2) = dist.atoms
    assert v1 == pytest.approx(math.log(4.0 / 3.0), abs=1e-12)
    assert w1 == pytest.approx(0.75, abs=1e-15)
    assert v2 == pytest.approx(math.log(4.0), abs=1e-12)
    assert w2 == pytest.approx(0.25, abs=1e-15)
    assert dist.mean() == pytest.approx(0.562335144619, abs=1e-11)
    assert dist.variance() == pytest.approx(0.226302930152, abs=1e-11)
    assert dist.exp_minus_sum() == pytest.approx(0.625, abs=1e-12)


def test_closed_form_reference_values():
    setup = TPMSetup.from_zeta(1.0, 0.5)
    assert moment_closed_form(1, setup) == pytest.approx(0.562335144619,
                                                         abs=1e-11)
    assert moment_closed_form(2, setup) == pytest.approx(0.542523745026,
                                                         abs=1e-11)
    m, v = mean_and_variance(setup)
    assert m == pytest.approx(0.562335144619, abs=1e-11)
    assert v == pytest.approx(0.226302930152, abs=1e-11)


def test_moment_order_bounds():
    setup = TPMSetup.from_zeta(0.5, 0.5)
    with pytest.raises(ValueError):
        moment_closed_form(0, setup)
    with pytest.raises(ValueError):
        moment_closed_form(13, setup)
    with pytest.raises(ValueError):
        moment_oracle(0, setup)
    # the cap itself still works
    assert math.isfinite(moment_closed_form(12, setup))


@settings(max_examples=200, deadline=None)
@given(zeta_strategy, lam_strategy, st.integers(min_value=1, max_value=6))
def test_closed_form_matches_enumeration(zeta0, lam, ell):
    setup = TPMSetup.from_zeta(zeta0, lam)
    closed = moment_closed_form(ell, setup)
    direct = moment_oracle(ell, setup)
    assert closed == pytest.approx(direct, abs=5e-11, rel=1e-9)


@given(zeta_strategy, lam_strategy)
def test_distribution_moments_match_closed_form(zeta0, lam):
    setup = TPMSetup.from_zeta(zeta0, lam)
    dist = entropy_distribution(setup)
    assert dist.mean() == pytest.approx(moment_closed_form(1, setup),
                                        abs=1e-10)
    assert dist.moment(2) == pytest.approx(moment_closed_form(2, setup),
                                           abs=1e-10)
    assert sum(w for _, w in dist.atoms) == pytest.approx(1.0, abs=1e-12)
    assert dist.variance() >= 0.0


def test_atom_merging_unbiased_state():
    # zeta0 = 0: all four records carry zero entropy production
    dist = entropy_distribution(TPMSetup.from_zeta(0.0, 0.7))
    assert dist.atoms == ((0.0, 1.0),)
    assert dist.mean() == 0.0 and dist.variance() == 0.0


def test_identity_channel_is_reversible():
    dist = entropy_distribution(TPMSetup.from_zeta(1.0, 1.0))
    assert dist.atoms == ((0.0, 1.0),)
    m, v = mean_and_variance(TPMSetup.from_zeta(1.0, 1.0))
    assert m == 0.0 and v == 0.0


@given(st.floats(min_value=0.05, max_value=0.95),
       st.floats(min_value=0.05, max_value=0.95))
def test_mean_nonnegative_for_cp_channel(zeta0, lam):
    # unital CP channels cannot make the entropy production negative on average
    m, v = mean_and_variance(TPMSetup.from_zeta(zeta0, lam))
    assert m >= -1e-14
    assert v >= 0.0
