import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from curvedttw import dual
from curvedttw.dual import Dual
from curvedttw.dynamics import (
    SW,
    CustomF,
    Harmonic,
    ModelParams,
    PhaseState,
    TTW_F,
    TTW_G,
    angular_factor,
    as_fraction,
    hamiltonian,
    kinetic,
    potential,
    vector_field,
)
from curvedttw.errors import PoleError
from curvedttw.kgeom import sin_k, tan_k

# mpmath, 50 digits: tanh(1)^2/2 + (1 + 0.5 cos 1.4) / (2 sin^2(1.4) sinh^2(1))
U_TTW_F_HYPERBOLIC = 0.69449535954781404122


def test_as_fraction():
    assert as_fraction("3/2") == Fraction(3, 2)
    assert as_fraction(2) == Fraction(2)
    assert as_fraction(1.5) == Fraction(3, 2)
    assert TTW_F("6/4", 1, 0).m == Fraction(3, 2)
    with pytest.raises(ValueError):
        as_fraction("-1/2")


def test_angular_factor_examples():
    assert angular_factor(Harmonic(), 0.4) == (0.0, 0.0)
    F, dF = angular_factor(TTW_F(1, 1.0, 0.0), math.pi / 2)
    assert F == pytest.approx(1.0) and dF == pytest.approx(0.0, abs=1e-15)
    # G_2 at pi/8: 0.3/cos^2(pi/4) + 0.7/sin^2(pi/4) = 2; mpmath derivative -3.2
    F, dF = angular_factor(TTW_G(2, 0.3, 0.7), math.pi / 8)
    assert F == pytest.approx(2.0, rel=1e-14)
    assert dF == pytest.approx(-3.2, rel=1e-13)


@pytest.mark.parametrize("variant", [TTW_F("5/2", 1.2, -0.4), TTW_G("3/2", 0.3, 0.9), SW(0.2, 0.6)])
def test_angular_derivative_matches_dual(variant):
    phi = np.linspace(0.05, 0.6, 7)
    (x,) = Dual.variables(phi)
    F, _ = angular_factor(variant, x)
    _, dF = angular_factor(variant, phi)
    assert np.allclose(F.d[0], dF, rtol=1e-12)


def test_angular_poles():
    with pytest.raises(PoleError):
        angular_factor(TTW_F(2, 1.0, 0.0), math.pi / 2)
    with pytest.raises(PoleError):
        angular_factor(TTW_G(1, 1.0, 1.0), math.pi / 2)
    with pytest.raises(PoleError):
        potential(ModelParams(0.0, 1.0, SW(1.0, 1.0)), 1.0, 0.0)


def test_potential_examples():
    assert potential(ModelParams(0.0, 1.0), 2.0, 0.3) == pytest.approx(2.0)
    assert potential(ModelParams(1.0, 1.0), math.pi / 4, 1.0) == pytest.approx(0.5)
    m = ModelParams(-1.0, 1.0, TTW_F(2, 1.0, 0.5))
    assert potential(m, 1.0, 0.7) == pytest.approx(U_TTW_F_HYPERBOLIC, rel=1e-14)


def test_sw_potential_is_printed_form():
    m = ModelParams(1.0, 0.8, SW(0.3, 0.5))
    r, phi = 0.6, 0.4
    S = math.sin(r)
    expected = 0.5 * 0.64 * math.tan(r) ** 2 + 0.3 / (S * math.cos(phi)) ** 2 + 0.5 / (S * math.sin(phi)) ** 2
    assert potential(m, r, phi) == pytest.approx(expected, rel=1e-14)


def test_potential_radial_wall():
    with pytest.raises(PoleError):
        potential(ModelParams(1.0, 1.0), math.pi / 2, 0.0)
    with pytest.raises(PoleError):
        hamiltonian(ModelParams(0.0, 1.0), PhaseState(0.0, 0.0, 1.0, 1.0))


def test_hamiltonian_examples(rng):
    assert hamiltonian(ModelParams(0.0, 0.0), PhaseState(1.0, 0.0, 3.0, 0.0)) == 4.5
    assert hamiltonian(ModelParams(1.0, 1.0), PhaseState(math.pi / 4, 0.0, 0.0, 0.0)) == pytest.approx(0.5)
    for _ in range(20):
        k = rng.uniform(-2, 2)
        m = ModelParams(k, rng.uniform(0, 2), TTW_F(Fraction(3, 2), 1.0, 0.3))
        s = PhaseState(rng.uniform(0.2, 0.9), rng.uniform(0.3, 1.7), *rng.uniform(-2, 2, 2))
        S = sin_k(k, s.r)
        kin = 0.5 * s.p_r**2 + 0.5 * s.p_phi**2 / S**2
        F = (1.0 + 0.3 * math.cos(1.5 * s.phi)) / math.sin(1.5 * s.phi) ** 2
        pot = 0.5 * m.omega0**2 * tan_k(k, s.r) ** 2 + 0.5 * F / S**2
        assert hamiltonian(m, s) == pytest.approx(kin + pot, rel=1e-13)
        assert kinetic(m, s) == pytest.approx(kin, rel=1e-14)


def test_vector_field_examples():
    assert vector_field(ModelParams(0.0, 0.0), PhaseState(1.0, 0.0, 0.0, 0.0)) == (0.0, 0.0, 0.0, 0.0)
    out = vector_field(ModelParams(0.0, 1.0), PhaseState(1.0, 0.0, 0.0, 0.0))
    assert out == pytest.approx((0.0, 0.0, -1.0, 0.0))


VARIANTS = [Harmonic(), SW(0.3, 0.4), TTW_F("3/2", 1.0, 0.5), TTW_G(2, 0.2, 0.6),
            CustomF(lambda p: (1.0 + 0.5 * np.sin(p) ** 2, np.sin(2 * p) * 0.5))]


@pytest.mark.parametrize("variant", VARIANTS, ids=lambda v: type(v).__name__)
@pytest.mark.parametrize("kappa", [-1.0, 0.0, 0.6])
def test_vector_field_is_hamiltonian_gradient(variant, kappa, rng):
    m = ModelParams(kappa, 1.1, variant)
    for _ in range(10):
        s = np.array([rng.uniform(0.3, 1.0), rng.uniform(0.3, 0.5), *rng.uniform(-1.5, 1.5, 2)])
        grad = []
        for i in range(4):
            h = 1e-5 * (1 + abs(s[i]))
            e = np.eye(4)[i] * h
            grad.append((hamiltonian(m, PhaseState(*(s + e))) - hamiltonian(m, PhaseState(*(s - e)))) / (2 * h))
        expected = np.array([grad[2], grad[3], -grad[0], -grad[1]])
        got = np.array(vector_field(m, PhaseState(*s)))
        scale = max(1.0, np.max(np.abs(expected)))
        assert np.max(np.abs(got - expected)) <= 1e-8 * scale


@settings(max_examples=300, deadline=None)
@given(st.floats(0.01, math.pi - 0.01), st.sampled_from([Fraction(1), Fraction(2), Fraction(3, 2), Fraction(5, 2)]),
       st.floats(-3, 3), st.floats(-3, 3))
def test_f_g_trig_equality(phi, m, alpha, beta):
    x = float(m) * phi
    assume(abs(math.sin(2 * x)) > 1e-2)
    lhs = (2 * (alpha + beta) / math.sin(2 * x) ** 2
           + 2 * (beta - alpha) * math.cos(2 * x) / math.sin(2 * x) ** 2)
    rhs = alpha / math.cos(x) ** 2 + beta / math.sin(x) ** 2
    mag = abs(alpha) / math.cos(x) ** 2 + abs(beta) / math.sin(x) ** 2
    assert abs(lhs - rhs) <= 1e-11 * max(mag, 1e-300)
    F, _ = angular_factor(TTW_G(m, alpha, beta).as_ttw_f(), phi)
    G, _ = angular_factor(TTW_G(m, alpha, beta), phi)
    assert abs(F - G) <= 1e-11 * max(mag, 1e-300)


def test_f_g_potentials_agree(rng):
    g = TTW_G("3/2", 0.4, 0.9)
    for k in (-1.0, 0.0, 1.0):
        mg = ModelParams(k, 1.2, g)
        mf = mg.with_(variant=g.as_ttw_f())
        r = rng.uniform(0.2, 1.2, 50)
        phi = rng.uniform(0.1, 0.9, 50)
        assert np.allclose(potential(mg, r, phi), potential(mf, r, phi), rtol=1e-11)


def test_flat_reduction_matches_euclidean(rng):
    """kappa = 0 against the polar Euclidean TTW formulas."""
    w, alpha, beta, m = 1.3, 0.4, 0.7, Fraction(5, 2)
    model = ModelParams(0.0, w, TTW_G(m, alpha, beta))
    for _ in range(20):
        r, phi = rng.uniform(0.2, 2.0), rng.uniform(0.05, 0.55)
        p_r, p_phi = rng.uniform(-2, 2, 2)
        x = 2.5 * phi
        ang = alpha / math.cos(x) ** 2 + beta / math.sin(x) ** 2
        V = 0.5 * w * w * r * r + ang / (2 * r * r)
        assert potential(model, r, phi) == pytest.approx(V, rel=1e-12)
        dang = 2 * 2.5 * (alpha * math.sin(x) / math.cos(x) ** 3 - beta * math.cos(x) / math.sin(x) ** 3)
        euclid = (p_r, p_phi / r**2, (p_phi**2 + ang) / r**3 - w * w * r, -0.5 * dang / r**2)
        got = vector_field(model, PhaseState(r, phi, p_r, p_phi))
        assert np.allclose(got, euclid, rtol=1e-12, atol=1e-12)


def test_harmonic_potential_ordering():
    r = np.linspace(0.01, 1.49, 300)
    U = [potential(ModelParams(k, 1.0), r, 0.0) for k in (-1.0, 0.0, 1.0)]
    assert np.all(U[2] > U[1]) and np.all(U[1] > U[0])


def test_custom_f_dual_lift_uses_supplied_derivative():
    v = CustomF(lambda p: (math.cos(p) ** 2 + 1.0, -math.sin(2 * p)))
    (x,) = Dual.variables(0.3)
    F = potential(ModelParams(0.0, 0.0, v), 1.0, x)
    assert F.d[0] == pytest.approx(-0.5 * math.sin(0.6))


def test_model_validation():
    with pytest.raises(ValueError):
        ModelParams(math.nan)
    with pytest.raises(ValueError):
        ModelParams(1.0, -1.0)
    assert ModelParams(4.0).r_max == pytest.approx(math.pi / 4)
    assert dual.value(PhaseState(1, 2, 3, 4).as_array()[3]) == 4
