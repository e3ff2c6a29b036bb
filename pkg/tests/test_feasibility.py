from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pmelab.density import DensitySpec, power_density
from pmelab.errors import EpsilonTooLarge, KBoundViolated, NoFeasiblePoint, PeqMUnsupported
from pmelab.feasibility import (ProblemExponents, feasible_critical_global,
                                feasible_fast_blowup, feasible_fast_global, feasible_slow,
                                k_coefficient, recheck)
from conftest import FEASIBLE

E = ProblemExponents


def test_exponents_validated():
    with pytest.raises(ValueError):
        E(1.0, 2.0)


@given(m=st.floats(1.05, 6), p=st.floats(1.05, 6))
def test_k_coefficient_is_peak(m, p):
    # K is the maximum over s in (0, 1) of s^a - s^(a+1), a = (m-1)/(p-1)
    a = (m - 1) / (p - 1)
    K = k_coefficient(m, p)
    grid = [i / 4000 for i in range(1, 4000)]
    best = max(s ** a - s ** (a + 1) for s in grid)
    assert K >= best * (1 - 1e-9)
    assert K <= best * (1 + 1e-3) + 1e-12


def test_reports_recheck_with_nonnegative_margins(family):
    _, _, report = family
    assert report.feasible
    again = recheck(report)
    assert [c.id for c in again] == [c.id for c in report.checks]
    assert all(c.margin >= 0 for c in again)


def test_peqm_instance_feasible():
    rep = feasible_fast_blowup(E(2, 2), power_density(1.0, 3.0))
    assert rep.system == "fast-blowup-PeqM"
    assert all(c.margin >= 0 for c in recheck(rep))


def test_report_json_and_digest_stable():
    rep = FEASIBLE["fast-super"][2]
    body = json.loads(rep.to_json())
    assert body["feasible"] is True
    assert rep.digest() == feasible_fast_global(E(2, 3), power_density(1.0, 3.0)).digest()


def test_kbound_violation():
    with pytest.raises(KBoundViolated):
        feasible_fast_global(E(2, 3), DensitySpec(R=1.0, q=2.1, c1=1.0, c2=50.0))


def test_epsilon_too_large():
    with pytest.raises(EpsilonTooLarge):
        feasible_fast_blowup(E(2, 3), power_density(1.0, 3.0), eps=0.4)


def test_slow_peqm_unsupported():
    with pytest.raises(PeqMUnsupported):
        feasible_slow(E(2, 2), power_density(1.0, 1.0))


def test_slow_literal_mode_is_infeasible():
    with pytest.raises(NoFeasiblePoint) as info:
        feasible_slow(E(2, 3), power_density(1.0, 1.0), sign_mode="literal")
    assert not info.value.report.feasible


def test_slow_below_m_uses_growth():
    rep = feasible_slow(E(3, 2), power_density(1.0, 1.0))
    assert rep.params["alpha"] > 0 and rep.params["T"] > 1
    assert all(c.margin >= 0 for c in recheck(rep))


def test_case_mismatch_rejected():
    with pytest.raises(ValueError):
        feasible_fast_blowup(E(2, 3), power_density(1.0, 3.0), case="PeqM")


def test_critical_infinite_horizon_infeasible():
    with pytest.raises(NoFeasiblePoint):
        feasible_critical_global(E(2, 3), power_density(1.0, 2.0), horizon=float("inf"))


@settings(max_examples=15, deadline=None)
@given(p=st.floats(2.2, 5.0), q=st.floats(2.5, 5.0))
def test_fast_global_reports_are_self_consistent(p, q):
    try:
        rep = feasible_fast_global(E(2, p), power_density(1.0, q))
    except (NoFeasiblePoint, KBoundViolated):
        return
    assert all(c.margin >= 0 for c in recheck(rep))
