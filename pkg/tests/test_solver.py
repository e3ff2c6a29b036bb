from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pmelab.density import power_density
from pmelab.errors import InvalidDatum, WindowMismatch
from pmelab.solver import (BLOWUP, GLOBAL, Field, SchemeConfig, barenblatt, barenblatt_front,
                           compare_with_barrier, graded_nodes, grid_tolerance, insert_nodes,
                           local_existence_time, minimal_solution, solve_regularized,
                           uniform_nodes)
from conftest import FEASIBLE

M, C_BB, T0, T1 = 2.0, 0.03, 0.1, 1.0


def barenblatt_run(nx: int, order: int = 2, dt_max: float = 1e-3):
    density = power_density(1.0, 0.0)
    cfg = SchemeConfig(nx=nx, mesh="uniform", reaction=False, order=order, dt_max=dt_max,
                       dt0=1e-4)
    res = solve_regularized(density, M, 2.0, lambda x: barenblatt(x, T0, M, C_BB), 0.01, cfg,
                            T1 - T0)
    exact = barenblatt(res.grid, T1, M, C_BB)
    inner = np.abs(res.grid) < 0.8 * barenblatt_front(T1, M, C_BB)
    err = np.max(np.abs(res.snapshots[-1][inner] - exact[inner])) / np.max(exact)
    return res, err


def test_local_existence_time_examples():
    assert local_existence_time(2.0, np.array([0.0, 1.0, 0.5])) == pytest.approx(1.0)
    assert local_existence_time(3.0, np.array([2.0])) == pytest.approx(1 / 8)
    assert local_existence_time(3.0, np.zeros(4)) == math.inf
    with pytest.raises(ValueError):
        local_existence_time(1.0, np.ones(3))
    with pytest.raises(InvalidDatum):
        local_existence_time(2.0, np.array([np.inf]))


@given(p=st.floats(1.1, 5), s=st.floats(1e-3, 1e3))
def test_local_existence_time_scaling(p, s):
    # the ODE u' = u^p from u(0) = s blows up exactly at this time
    assert local_existence_time(p, np.array([s])) == pytest.approx(
        s ** (1 - p) / (p - 1), rel=1e-12)


def test_field_validation():
    x = np.linspace(-1, 1, 5)
    with pytest.raises(InvalidDatum):
        Field(x, -np.ones(5))
    with pytest.raises(InvalidDatum):
        Field(x[::-1], np.ones(5))
    f = Field(x, np.ones(5))
    assert f.values[0] == 0 and f.values[-1] == 0


@pytest.mark.parametrize("ratio", [1.02, 1.1])
def test_graded_mesh(ratio):
    x = graded_nodes(1.0, 0.01, 401, ratio)
    assert x[0] == pytest.approx(-0.99) and x[-1] == pytest.approx(0.99)
    assert np.all(np.diff(x) > 0)
    np.testing.assert_allclose(x, -x[::-1], atol=1e-15)
    h = np.diff(x)
    assert h[0] < h[len(h) // 2]
    assert x.size == 401


def test_insert_nodes():
    x = uniform_nodes(1.0, 0.1, 17)
    y = insert_nodes(x, [0.33, -0.33])
    assert 0.33 in y and -0.33 in y
    assert np.all(np.diff(y) > 0)


def test_zero_datum_stays_zero():
    res = solve_regularized(power_density(1.0, 3.0), 2.0, 3.0, lambda x: 0 * x, 0.01,
                            SchemeConfig(nx=101), 1.0)
    assert res.status == GLOBAL
    assert np.all(res.snapshots == 0)


def test_symmetric_datum_stays_symmetric():
    res = solve_regularized(power_density(1.0, 3.0), 2.0, 3.0,
                            lambda x: 0.2 * np.maximum(1 - (x / 0.5) ** 2, 0) ** 2, 0.01,
                            SchemeConfig(nx=201), 1.0)
    for snap in res.snapshots:
        np.testing.assert_allclose(snap, snap[::-1], atol=1e-12)


def test_barenblatt_oracle_and_mass():
    res, err = barenblatt_run(801)
    assert err <= 1e-2
    mass = res.history[:, 2]
    assert abs(mass[-1] - mass[0]) <= 1e-3 * mass[0]


def test_spatial_convergence():
    errs = [barenblatt_run(nx, dt_max=5e-4)[1] for nx in (101, 201, 401)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 0.3 * errs[0]


def test_bdf2_beats_backward_euler():
    e1 = barenblatt_run(401, order=1, dt_max=4e-3)[1]
    e2 = barenblatt_run(401, order=2, dt_max=4e-3)[1]
    assert e2 < e1


def test_flat_datum_blows_up_after_ode_time():
    # constant weight, reaction dominated: the ODE time is a lower bound
    cfg = SchemeConfig(nx=201, order=2, rel_change_tol=0.02, mesh="uniform")
    u0 = Field.from_function(uniform_nodes(1.0, 0.01, 201), lambda x: 10.0 * (1 - x ** 8))
    res = solve_regularized(power_density(1.0, 0.0), 2.0, 3.0, u0, 0.01, cfg, 1.0)
    assert res.status == BLOWUP
    lo, hi = res.bracket
    tau = local_existence_time(3.0, u0)
    assert lo >= tau - res.history[-1, 3]
    assert lo <= hi < 2 * tau


def test_comparison_window():
    spec, density, _ = FEASIBLE["fast-sub-pgtm"]
    res = solve_regularized(density, spec.m, spec.p, lambda x: 0 * x, 0.1,
                            SchemeConfig(nx=64), 0.5)
    with pytest.raises(WindowMismatch):
        compare_with_barrier(res, spec, t_max=-1.0)
    rep = compare_with_barrier(res, spec, orientation="super", t_max=0.4)
    assert rep.n_snapshots > 0


def test_grid_tolerance_quadratic():
    x = np.linspace(0, 1, 11)
    assert grid_tolerance(x, x ** 2) == pytest.approx(2 * 0.1 ** 2 / 8)
    assert grid_tolerance(x, 3 * x + 1) == pytest.approx(0.0, abs=1e-13)


def test_minimal_solution_monotone():
    spec, density, _ = FEASIBLE["fast-super"]

    def u0(x):
        return 0.5 * np.asarray(spec.C * np.maximum(1 - (x / 0.6) ** 2, 0) ** 2)

    _, rep = minimal_solution(density, spec.m, spec.p, u0, deltas=(0.2, 0.1, 0.05),
                              cfg=SchemeConfig(nx=201), t_end=0.5)
    assert rep["monotone"]
    assert rep["worst_decrease"] >= -1e-6
    assert len(rep["level_sup_differences"]) == 2
    with pytest.raises(ValueError):
        minimal_solution(density, 2.0, 3.0, u0, deltas=(0.1, 0.2))
