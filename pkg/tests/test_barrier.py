from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pmelab.barrier import (ProfileCriticalLog, ProfileFast, ProfilePower, TimeFactors,
                            barrier_derivatives, bracket, eval_barrier, make_barrier,
                            support_edge)
from pmelab.density import power_density
from pmelab.errors import (BracketNonpositive, DomainBoundary, OnBranchInterface,
                           TimeOutOfDomain)
from conftest import FEASIBLE


def _one_sided(prof, x0):
    left = prof.derivs(np.array(x0), side="left")
    right = prof.derivs(np.array(x0), side="right")
    return [float(v) for v in left[:2]], [float(v) for v in right[:2]]


def test_fast_profile_glues_c1():
    prof = ProfileFast(1.0, 0.25, 1.0)
    for x0 in prof.kinks:
        (vl, dl), (vr, dr) = _one_sided(prof, x0)
        assert abs(vl - vr) <= 1e-12 * abs(vl)
        assert abs(dl - dr) <= 1e-12 * abs(dl)


def test_fast_profile_closed_form():
    # independent oracle: the core quadratic matches (R-|x|)^(-b) and its slope at R-eps
    R, eps, b = 1.0, 0.25, 1.5
    a0, a2 = ProfileFast(R, eps, b).coefficients
    e = R - eps
    assert a0 + a2 * e * e == pytest.approx(eps ** -b, rel=1e-13)
    assert 2 * a2 * e == pytest.approx(b * eps ** (-b - 1), rel=1e-13)


def test_log_profile_glues_only_with_positive_core():
    good = ProfileCriticalLog(1.0, 0.25, core_sign=1)
    (vl, dl), (vr, dr) = _one_sided(good, 0.75)
    assert abs(vl - vr) <= 1e-12 * abs(vl)
    assert abs(dl - dr) <= 1e-12 * abs(dl)
    bad = ProfileCriticalLog(1.0, 0.25, core_sign=-1)
    (vl, dl), (vr, dr) = _one_sided(bad, 0.75)
    assert abs(vl - vr) <= 1e-12 * abs(vl)
    assert dl == pytest.approx(-dr, rel=1e-12)


@pytest.mark.parametrize("prof", [ProfileFast(1.0, 0.3, 1.0), ProfileCriticalLog(1.0, 0.25),
                                  ProfilePower(1.0, 1.0)])
def test_profile_derivatives_against_gradient(prof):
    x = np.linspace(-0.95, 0.95, 20000)
    P, dP, d2P = prof.derivs(x)
    h = x[1] - x[0]
    inner = np.ones_like(x, dtype=bool)
    for k in prof.kinks:
        inner &= np.abs(x - k) > 3 * h
    inner &= np.abs(x) > 3 * h
    num = np.gradient(P, h)
    num2 = np.gradient(dP, h)
    sel = inner & (np.abs(x) < 0.94)
    np.testing.assert_allclose(num[sel], dP[sel], rtol=1e-4, atol=1e-6)
    np.testing.assert_allclose(num2[sel], d2P[sel], rtol=1e-3, atol=1e-5)


def test_time_factors():
    fw = TimeFactors("forward", 0.5, 0.25, 2.0)
    assert fw.zeta(2.0) == pytest.approx(4.0 ** -0.5)
    assert fw.eta(2.0) == pytest.approx(4.0 ** -0.25)
    bw = TimeFactors("backward", 0.5, 0.25, 2.0)
    assert bw.zeta(1.0) == pytest.approx(1.0)
    with pytest.raises(TimeOutOfDomain):
        bw.zeta(2.0)
    gr = TimeFactors("growth", 1.0, 0.0, 2.0)
    assert gr.zeta(1.0) == pytest.approx(3.0)
    assert gr.eta(1.0) == pytest.approx(1.0)
    for tf in (fw, bw, gr):
        t, dt = 0.3, 1e-6
        assert tf.dzeta(t) == pytest.approx((tf.zeta(t + dt) - tf.zeta(t - dt)) / (2 * dt),
                                            rel=1e-6)
        assert tf.deta(t) == pytest.approx((tf.eta(t + dt) - tf.eta(t - dt)) / (2 * dt),
                                           rel=1e-6, abs=1e-12)


def test_family_set():
    with pytest.raises(ValueError):
        make_barrier("slow", "sub", m=2, p=3, C=1, q=1.0, d_exp=0.5)
    with pytest.raises(ValueError):
        make_barrier("fast", "sub", m=2, p=3, C=1, q=3.0, eps=0.4)
    with pytest.raises(ValueError):
        make_barrier("critical", "super", m=2, p=3, C=1)


def test_default_exponents_and_sign():
    sup = make_barrier("fast", "super", m=2, p=3, C=1, q=3.0, eps=0.5)
    assert sup.bracket_sign == -1
    assert sup.alpha == pytest.approx(0.5) and sup.beta == pytest.approx(0.5)
    sub = make_barrier("fast", "sub", m=3, p=2, C=1, q=3.0, eps=0.3)
    assert sub.bracket_sign == 1
    assert sub.beta == pytest.approx(1.0)


@pytest.mark.parametrize("name", sorted(FEASIBLE))
@settings(max_examples=40, deadline=None)
@given(x=st.floats(-0.999, 0.999), frac=st.floats(0.0, 0.9))
def test_barrier_even_and_nonnegative(name, x, frac):
    spec, density, _ = FEASIBLE[name]
    t = frac * spec.T
    a = eval_barrier(spec, density, x, t)
    b = eval_barrier(spec, density, -x, t)
    assert a >= 0
    assert a == b or (math.isinf(a) and math.isinf(b))


@pytest.mark.parametrize("name", ["fast-sub-pgtm", "fast-sub-pltm", "critical-super"])
def test_support_edge_zeroes_bracket(name):
    spec, density, _ = FEASIBLE[name]
    for t in (0.0, 0.3 * spec.T):
        e = support_edge(spec, t)
        assert e is not None and 0 < e < spec.R
        assert abs(float(bracket(spec, e, t))) < 1e-10
        outside = e + 0.5 * (spec.R - e)
        assert eval_barrier(spec, density, outside, t) == 0.0


def test_negative_sign_is_infinite_outside():
    spec = make_barrier("fast", "super", m=2, p=3, C=0.25, a=0.05, T=1.0, q=3.0, eps=0.5)
    d = power_density(1.0, 3.0)
    assert math.isinf(eval_barrier(spec, d, 0.99, 0.0))


def test_zero_amplitude():
    spec = make_barrier("fast", "super", m=2, p=3, C=0.0, q=3.0, eps=0.5, bracket_sign=1)
    d = power_density(1.0, 3.0)
    assert np.all(eval_barrier(spec, d, np.linspace(-0.9, 0.9, 7), 1.0) == 0)
    assert np.all(barrier_derivatives(spec, d, np.array([0.1, 0.2]), 1.0)[2] == 0)


def test_domain_errors():
    spec, density, _ = FEASIBLE["slow-super"]
    with pytest.raises(DomainBoundary):
        eval_barrier(spec, density, 1.5, 0.0)
    with pytest.raises(OnBranchInterface):
        barrier_derivatives(spec, density, np.array(0.0), 0.0)
    sub, dens, _ = FEASIBLE["fast-sub-pgtm"]
    with pytest.raises(BracketNonpositive):
        barrier_derivatives(sub, dens, np.array(0.9999), 0.0)
