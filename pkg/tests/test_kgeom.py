import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvedttw.dual import Dual
from curvedttw.errors import PoleError
from curvedttw.kgeom import (
    Curvature,
    RadialDomain,
    cos_k,
    d_cos_k,
    d_sin_k,
    d_tan_k,
    r_max,
    sin_k,
    tan_k,
)

# 50-digit mpmath evaluations of the branch formulas
SIN_4_03 = 0.28232123669751767860
COSH_1 = 1.5430806348152437785
TANH_2 = 0.96402758007581688395
SECH2_1 = 0.41997434161402606939


def test_sin_k_examples():
    assert sin_k(0.0, 2.5) == 2.5
    assert sin_k(1.0, math.pi / 2) == pytest.approx(1.0, abs=1e-15)
    assert sin_k(4.0, 0.3) == pytest.approx(SIN_4_03, rel=1e-15)


def test_cos_k_examples():
    assert cos_k(0.0, 7.0) == 1.0
    for k in (-3.0, -1e-9, 0.0, 1e-9, 2.0):
        assert cos_k(k, 0.0) == 1.0
    assert cos_k(-1.0, 1.0) == pytest.approx(COSH_1, rel=1e-15)


def test_tan_k_examples():
    assert tan_k(0.0, 1.3) == 1.3
    assert tan_k(1.0, math.pi / 4) == pytest.approx(1.0, rel=1e-15)
    assert tan_k(-1.0, 2.0) == pytest.approx(TANH_2, rel=1e-15)


def test_derivative_examples():
    assert d_cos_k(0.0, 3.3) == 0.0
    assert d_sin_k(1.0, 0.0) == 1.0
    assert d_tan_k(-1.0, 1.0) == pytest.approx(SECH2_1, rel=1e-15)


def test_tan_k_pole():
    with pytest.raises(PoleError):
        tan_k(1.0, math.pi / 2)
    with pytest.raises(PoleError):
        d_tan_k(4.0, math.pi / 4)
    # configurable tolerance
    with pytest.raises(PoleError):
        tan_k(1.0, math.pi / 2 - 1e-7, pole_tol=1e-6)
    assert tan_k(1.0, math.pi / 2 - 1e-7) > 1e6


def test_r_max():
    assert r_max(1.0) == math.pi / 2
    assert r_max(0.0) == math.inf
    assert r_max(-2.0) == math.inf
    assert r_max(4.0) == pytest.approx(math.pi / 4)


def test_curvature_and_domain_types():
    assert Curvature(0.3).geometry == "sphere"
    assert Curvature(0.0).geometry == "flat"
    assert Curvature(-1e-300).geometry == "hyperbolic"
    with pytest.raises(ValueError):
        Curvature(math.nan)
    dom = RadialDomain.for_curvature(1.0)
    assert dom.r_max == math.pi / 2 and dom.contains(1.0) and not dom.contains(2.0)
    assert RadialDomain.for_curvature(-1.0).r_max == math.inf
    with pytest.raises(ValueError):
        RadialDomain(1.0, 1.0)
    with pytest.raises(ValueError):
        sin_k(math.inf, 1.0)


def test_vectorised_mixed_series_and_branch():
    k = 1e-4
    x = np.array([1e-3, 0.5, 5.0])  # kx^2 below and above the series threshold
    assert np.allclose(sin_k(k, x), np.sin(math.sqrt(k) * x) / math.sqrt(k), rtol=1e-15)
    assert np.allclose(cos_k(k, x), np.cos(math.sqrt(k) * x), rtol=1e-15)


@settings(max_examples=300, deadline=None)
@given(st.floats(-10, 10), st.floats(0, 1))
def test_pythagorean_identity(k, frac):
    x = frac * min(r_max(k), 2.5 / math.sqrt(abs(k)) if k else 10.0, 10.0)
    assert abs(cos_k(k, x) ** 2 + k * sin_k(k, x) ** 2 - 1.0) <= 1e-12


@settings(max_examples=300, deadline=None)
@given(st.floats(-1e-6, 1e-6), st.floats(-10, 10))
def test_kappa_continuity(k, x):
    assert abs(sin_k(k, x) - x) <= 2 * abs(k) * abs(x) ** 3
    assert abs(cos_k(k, x) - 1.0) <= abs(k) * x * x


@pytest.mark.parametrize("k", [-3.0, -1.0, -1e-7, 0.0, 1e-7, 0.5, 2.0])
@pytest.mark.parametrize("x", [0.1, 0.45, 0.9])
def test_derivatives_match_central_differences(k, x):
    h = 1e-5
    for f, df in ((sin_k, d_sin_k), (cos_k, d_cos_k), (tan_k, d_tan_k)):
        fd = (f(k, x + h) - f(k, x - h)) / (2 * h)
        exact = df(k, x)
        assert abs(fd - exact) <= 1e-8 * max(abs(exact), 1.0)


@settings(max_examples=200, deadline=None)
@given(st.floats(1e-3, 10), st.floats(0, 0.99))
def test_scaling_law(k, frac):
    x = frac * r_max(k)
    assert sin_k(k, x) == pytest.approx(sin_k(1.0, math.sqrt(k) * x) / math.sqrt(k), rel=1e-12, abs=1e-15)


def test_dual_lift_matches_derivatives():
    (x,) = Dual.variables(0.7)
    for k in (-2.0, 0.0, 1e-12, 1.5):
        assert sin_k(k, x).d[0] == pytest.approx(d_sin_k(k, 0.7), rel=1e-14)
        assert cos_k(k, x).d[0] == pytest.approx(d_cos_k(k, 0.7), rel=1e-14, abs=1e-300)
        assert tan_k(k, x).d[0] == pytest.approx(d_tan_k(k, 0.7), rel=1e-14)
