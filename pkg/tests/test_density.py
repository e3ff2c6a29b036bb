from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pmelab.density import (CRITICAL, FAST, SLOW, DensitySpec, classify_regime,
                            collar_constants, eval_density, load_table, power_density,
                            table_density, uniform_bounds)
from pmelab.errors import DomainBoundary, InvalidDensity, NegativeExponent


@pytest.mark.parametrize("q,tag,b", [(3.0, FAST, 1.0), (2.5, FAST, 0.5), (2.0, CRITICAL, None),
                                     (1.0, SLOW, None), (0.0, SLOW, None)])
def test_classify_regime(q, tag, b):
    reg = classify_regime(q)
    assert reg.tag == tag
    assert reg.b == b


def test_negative_exponent_rejected():
    with pytest.raises(NegativeExponent):
        classify_regime(-0.1)
    with pytest.raises(NegativeExponent):
        DensitySpec(q=-1.0)


@pytest.mark.parametrize("kw", [{"R": 0.0}, {"c1": 2.0, "c2": 1.0}, {"c1": 0.0},
                                {"eps0": 1.0}, {"eps0": 0.0}])
def test_invalid_spec(kw):
    with pytest.raises(InvalidDensity):
        DensitySpec(**kw)


def test_power_values():
    d = power_density(2.0, 3.0)
    x = np.array([0.0, 1.0, -1.5])
    np.testing.assert_allclose(eval_density(d, x), (2.0 - np.abs(x)) ** -3.0, rtol=1e-15)
    assert isinstance(eval_density(d, 0.5), float)


@pytest.mark.parametrize("x", [1.0, -1.0, 1.5, float("nan")])
def test_boundary_rejected(x):
    with pytest.raises(DomainBoundary):
        eval_density(power_density(1.0, 2.0), x)


@given(q=st.floats(0, 5), x=st.floats(-0.999, 0.999))
def test_even_and_positive(q, x):
    d = power_density(1.0, q)
    a, b = eval_density(d, x), eval_density(d, -x)
    assert a > 0
    assert a == b


@given(q=st.floats(0.01, 5), x=st.floats(0, 0.99), y=st.floats(0, 0.99))
def test_monotone_towards_boundary(q, x, y):
    d = power_density(1.0, q)
    lo, hi = sorted((x, y))
    assert eval_density(d, lo) <= eval_density(d, hi)


def test_uniform_bounds_power():
    lo, hi = uniform_bounds(power_density(1.0, 3.0), 0.5)
    assert lo == pytest.approx(1.0, rel=1e-12)
    assert hi == pytest.approx(8.0, rel=1e-12)


def test_collar_constants_declared_and_widened():
    d = DensitySpec(R=1.0, q=3.0, c1=1.0, c2=1.0, eps0=0.5)
    assert collar_constants(d, 0.3) == (1.0, 1.0)
    xs = np.linspace(-0.99, 0.99, 199)
    g = 1.0 + 0.5 * np.cos(np.pi * xs) ** 2
    tab = table_density(xs, g * (1 - np.abs(xs)) ** -3.0, R=1.0, q=3.0, c1=1.0, c2=1.5,
                        eps0=0.5)
    c1, c2 = collar_constants(tab, 0.9)
    assert c1 <= 1.0 and c2 >= 1.0
    assert c2 > 1.4


def test_table_roundtrip_and_mirroring(tmp_path):
    xs = np.linspace(0.0, 0.99, 100)
    rho = 1.2 * (1 - xs) ** -2.5
    path = tmp_path / "rho.csv"
    np.savetxt(path, np.column_stack([xs, rho]), delimiter=",", header="x,rho")
    tab = load_table(path, R=1.0, q=2.5, c1=1.0, c2=1.5, eps0=0.5)
    probe = np.array([-0.7, -0.2, 0.3, 0.95])
    np.testing.assert_allclose(eval_density(tab, probe), 1.2 * (1 - np.abs(probe)) ** -2.5,
                               rtol=1e-12)


def test_table_sandwich_violation():
    xs = np.linspace(0.0, 0.99, 50)
    with pytest.raises(InvalidDensity):
        table_density(xs, 3.0 * (1 - xs) ** -3.0, R=1.0, q=3.0, c1=1.0, c2=2.0, eps0=0.5)


def test_table_asymmetric_declared_symmetric():
    xs = np.linspace(-0.9, 0.9, 50)
    rho = (1 + 0.1 * (xs > 0.5)) * (1 - np.abs(xs)) ** -1.0
    with pytest.raises(InvalidDensity):
        table_density(xs, rho, R=1.0, q=1.0, c1=1.0, c2=1.2, eps0=0.5)
