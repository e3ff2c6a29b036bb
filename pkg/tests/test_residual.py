from __future__ import annotations

import numpy as np
import pytest

from pmelab.barrier import SUPER, make_barrier
from pmelab.density import power_density
from pmelab.errors import EmptyRegion, StencilCrossesInterface
from pmelab.experiments import barrier_regions
from pmelab.residual import (RegionSpec, admissible_points, analytic_residual,
                             check_interface, compare_bracket_conventions, fd_residual,
                             richardson_check, verify_sign)
from conftest import FEASIBLE


def test_region_validation():
    with pytest.raises(ValueError):
        RegionSpec("nowhere", 0.0, 1.0)
    with pytest.raises(ValueError):
        RegionSpec("A", 1.0, 0.0)


def test_admissible_points_respect_gap(family):
    spec, _, _ = family
    pts = admissible_points(spec, 10, np.random.default_rng(0))
    assert len(pts) == 10
    for x, t in pts:
        assert min(abs(x - k) for k in spec.kinks) >= 0.02 * spec.R
        assert spec.R - abs(x) >= 0.02 * spec.R


def test_richardson_order(family):
    spec, density, _ = family
    for x, t in admissible_points(spec, 3, np.random.default_rng(1)):
        res = richardson_check(spec, density, x, t)
        assert abs(res["slope"] - 2.0) <= 0.1, res
        assert res["richardson_rel_error"] <= 1e-6, res


def test_fd_stencil_refuses_kinks():
    spec, density, _ = FEASIBLE["fast-sub-pgtm"]
    with pytest.raises(StencilCrossesInterface):
        fd_residual(spec, density, spec.R - spec.eps + 1e-4, 0.1, 1e-3, 1e-3)
    with pytest.raises(StencilCrossesInterface):
        fd_residual(spec, density, 0.0, spec.T - 1e-4, 1e-3, 1e-3)


def test_residual_hand_computed_slow():
    # w = C (R-|x|)^(d/m), rho = (R-|x|)^(-q): N = -C^m d(d-1)(R-|x|)^(d-2+q) - w^p
    m, p, q, C, d = 2.0, 3.0, 1.0, 0.3, 0.5
    spec = make_barrier("slow", SUPER, m=m, p=p, C=C, q=q, d_exp=d, alpha=0.0)
    density = power_density(1.0, q)
    x = np.array([-0.6, 0.2, 0.7])
    r = 1 - np.abs(x)
    expected = -C ** m * d * (d - 1) * r ** (d - 2 + q) - (C * r ** (d / m)) ** p
    np.testing.assert_allclose(analytic_residual(spec, density, x, 0.0), expected, rtol=1e-13)


def test_sign_passes_with_feasible_parameters(family):
    spec, density, _ = family
    for region in barrier_regions(spec, 5.0):
        rep = verify_sign(spec, density, region, grid=(200, 50))
        assert rep.passed, rep.to_dict()
    assert check_interface(spec, density, [0.0, 0.2 * spec.T])["passed"]


def test_fast_super_sign_convention():
    spec, density, _ = FEASIBLE["fast-super"]
    out = compare_bracket_conventions(spec, density, RegionSpec("A", 0.0, 5.0), grid=(200, 50))
    assert out["passing"] == [1]
    assert not out["reports"][-1].passed


def test_inflated_amplitude_fails_critical_super():
    spec, density, _ = FEASIBLE["critical-super"]
    bad = spec.with_(C=10 * spec.C)
    rep = verify_sign(bad, density, RegionSpec("A", 0.0, 5.0), grid=(200, 50))
    assert not rep.passed
    assert rep.worst_normalized < 0


def test_omega_identity(family):
    _, _, report = family
    P = report.params
    m = report.context["m"]
    assert P["omega"] == pytest.approx(P["C"] ** (m - 1) / P["a"], rel=1e-12)


def test_dump_rows():
    spec, density, _ = FEASIBLE["critical-sub"]
    rows: list = []
    rep = verify_sign(spec, density, RegionSpec("S1S2", 0.0, 0.5), grid=(20, 5), dump=rows)
    assert len(rows) == rep.n_points
    assert all(len(r) == 4 for r in rows)


def test_empty_region():
    spec = make_barrier("fast", "sub", m=2, p=3, C=1.0, a=1e-6, T=1.0, q=3.0, eps=0.3)
    with pytest.raises(EmptyRegion):
        verify_sign(spec, power_density(1.0, 3.0), RegionSpec("A", 0.0, 0.5), grid=(20, 5))
