"""Constants of motion as pure functions of ``(model, state)``.

Every function here is written with plain arithmetic and the dual-aware
elementary functions, so it can be evaluated on floats, on ndarrays of
states (vectorised) or on :class:`~curvedttw.dual.Dual` states for the
Poisson bracket engine.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import dual
from .dual import value
from .dynamics import (
    SW,
    CustomF,
    Harmonic,
    ModelParams,
    PhaseState,
    TTW_F,
    TTW_G,
    _angular,
    hamiltonian,
)
from .errors import NegativeJ2, PoleError, VariantError
from .kgeom import POLE_TOL, cos_k, sin_k, tan_k


@dataclass(frozen=True)
class ComplexValue:
    """A complex number kept as an explicit (re, im) pair.

    Components may be floats, arrays or Duals; products are formed with the
    components' own arithmetic, which is what lets derivatives flow through.
    """

    re: object
    im: object

    def __add__(self, other):
        return ComplexValue(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return ComplexValue(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        if isinstance(other, ComplexValue):
            return ComplexValue(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return ComplexValue(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, (int, np.integer)) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result if result is not None else ComplexValue(1.0, 0.0)

    def conj(self) -> "ComplexValue":
        return ComplexValue(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def __abs__(self):
        return np.sqrt(value(self.abs2()))

    def to_complex(self):
        return value(self.re) + 1j * value(self.im)


@dataclass
class InvariantReport:
    H: float
    J: float
    J1: Optional[float] = None
    J2: Optional[float] = None
    M_r: Optional[ComplexValue] = None
    N_phi: Optional[ComplexValue] = None
    K_m: Optional[ComplexValue] = None
    lambda_k: Optional[float] = None
    extras: dict = field(default_factory=dict)

    def to_flat(self) -> dict:
        """Flat mapping for CSV/JSON rows; complex entries split into Re/Im keys."""
        out = {"H": self.H, "J": self.J}
        if self.J1 is not None:
            out["J1"] = self.J1
            out["J2"] = self.J2
        for name, z in (("M", self.M_r), ("N", self.N_phi), ("K", self.K_m)):
            if z is not None:
                out["Re" + name] = z.re
                out["Im" + name] = z.im
        if self.lambda_k is not None:
            out["lambda_k"] = self.lambda_k
        out.update(self.extras)
        return {k: float(v) if np.ndim(v) == 0 else v for k, v in out.items()}


def _require(model, *kinds):
    if not isinstance(model.variant, kinds):
        names = ", ".join(k.__name__ for k in kinds)
        raise VariantError(f"needs a {names} potential, got {type(model.variant).__name__}")


def _S(model, r):
    S = sin_k(model.kappa, r)
    if np.any(np.abs(value(S)) < POLE_TOL):
        raise PoleError("Sin_k(r) vanishes (r at the origin)")
    return S


def angular_momentum(model: ModelParams, state: PhaseState):
    return state.p_phi


def linear_momenta(model: ModelParams, state: PhaseState):
    """Curved analogues ``(P1, P2)`` of the Cartesian momenta."""
    S = _S(model, state.r)
    cot = cos_k(model.kappa, state.r) / S
    c, s = dual.cos(state.phi), dual.sin(state.phi)
    P1 = c * state.p_r - cot * s * state.p_phi
    P2 = s * state.p_r + cot * c * state.p_phi
    return P1, P2


def fradkin_components(model: ModelParams, state: PhaseState):
    """``(I1, I2, I4)``, the curved Fradkin tensor of the isotropic oscillator."""
    _require(model, Harmonic)
    P1, P2 = linear_momenta(model, state)
    T = tan_k(model.kappa, state.r)
    w2 = model.omega0**2
    c, s = dual.cos(state.phi), dual.sin(state.phi)
    tc, ts = T * c, T * s
    I1 = P1 * P1 + w2 * tc * tc
    I2 = P2 * P2 + w2 * ts * ts
    I4 = P1 * P2 + w2 * tc * ts
    return I1, I2, I4


def fradkin_energy(model: ModelParams, state: PhaseState):
    """``(I1 + I2 + kappa J**2) / 2``, which equals the Hamiltonian."""
    I1, I2, _ = fradkin_components(model, state)
    J = state.p_phi
    return 0.5 * (I1 + I2 + model.kappa * J * J)


def sw_invariants(model: ModelParams, state: PhaseState):
    """The three quadratic integrals ``(I1, I2, I3)`` of the curved SW system."""
    _require(model, SW)
    k2, k3 = model.variant.k2, model.variant.k3
    P1, P2 = linear_momenta(model, state)
    T = tan_k(model.kappa, state.r)
    c, s = dual.cos(state.phi), dual.sin(state.phi)
    if np.any(np.abs(value(c)) < POLE_TOL) or np.any(np.abs(value(s)) < POLE_TOL):
        raise PoleError("SW barrier: phi on a coordinate axis")
    w2 = model.omega0**2
    tc2 = (T * c) * (T * c)
    ts2 = (T * s) * (T * s)
    I1 = P1 * P1 + w2 * tc2 + 2.0 * k2 / tc2
    I2 = P2 * P2 + w2 * ts2 + 2.0 * k3 / ts2
    J = state.p_phi
    I3 = J * J + 2.0 * k2 / (c * c) + 2.0 * k3 / (s * s)
    return I1, I2, I3


_SEPARABLE = (TTW_F, TTW_G, CustomF)


def liouville_integrals(model: ModelParams, state: PhaseState):
    """``(J1, J2)``; for ``TTW_G`` these are the primed integrals built on G_m."""
    _require(model, *_SEPARABLE)
    F, _ = _angular(model.variant, state.phi, derivative=False)
    S = _S(model, state.r)
    S2 = S * S
    T = tan_k(model.kappa, state.r)
    pp2 = state.p_phi * state.p_phi
    J1 = state.p_r * state.p_r + pp2 / S2 + model.omega0**2 * T * T + F / S2
    J2 = pp2 + F
    return J1, J2


def _angular_frequency(variant):
    """Frequency and constant shift of the angular complex factor."""
    if isinstance(variant, TTW_F):
        return variant.m, 0.5 * variant.k_b
    return 2 * variant.m, variant.beta - variant.alpha


def complex_factors(model: ModelParams, state: PhaseState):
    """``(M_r, N_phi, lambda_k)`` whose phases rotate at rates 2 lambda and m lambda."""
    _require(model, TTW_F, TTW_G)
    _, J2 = liouville_integrals(model, state)
    if np.any(value(J2) <= 0):
        raise NegativeJ2("J2 must be positive for the complex factorisation")
    rJ2 = dual.sqrt(J2)
    T = tan_k(model.kappa, state.r)
    S = _S(model, state.r)
    p_r = state.p_r
    M_r = ComplexValue(
        2.0 * p_r * rJ2 / T,
        p_r * p_r + model.omega0**2 * T * T - J2 / (T * T),
    )
    m, shift = _angular_frequency(model.variant)
    x = (m.numerator * state.phi) / m.denominator
    N_phi = ComplexValue(shift + J2 * dual.cos(x), rJ2 * state.p_phi * dual.sin(x))
    return M_r, N_phi, rJ2 / (S * S)


def m_r2_alternate(model: ModelParams, state: PhaseState):
    """Second printed form of Im M_r: ``J1 - (1 + C**2) / S**2 * J2``."""
    J1, J2 = liouville_integrals(model, state)
    S = _S(model, state.r)
    C = cos_k(model.kappa, state.r)
    return J1 - (1.0 + C * C) / (S * S) * J2


def k_exponents(variant):
    """Integer exponents ``(a, b)`` with ``K = M_r**a * conj(N_phi)**b``."""
    if not isinstance(variant, (TTW_F, TTW_G)):
        raise VariantError(f"no complex constant for {type(variant).__name__}")
    p, q = variant.m.numerator, variant.m.denominator
    return (p if isinstance(variant, TTW_F) else 2 * p), 2 * q


def k_constant(model: ModelParams, state: PhaseState) -> ComplexValue:
    """The higher-order complex constant of motion ``M_r**a * conj(N_phi)**b``."""
    M_r, N_phi, _ = complex_factors(model, state)
    a, b = k_exponents(model.variant)
    return (M_r**a) * (N_phi.conj() ** b)


def moduli_closed_form(model: ModelParams, state: PhaseState):
    """``|M_r|**2`` and ``|N_phi|**2`` expressed through H and J2 only."""
    _require(model, TTW_F, TTW_G)
    H = hamiltonian(model, state)
    _, J2 = liouville_integrals(model, state)
    k = model.kappa
    M2 = 4.0 * (H * H - model.omega0**2 * J2) + k * (k * J2 - 4.0 * H) * J2
    v = model.variant
    if isinstance(v, TTW_F):
        k_a, k_b = v.k_a, v.k_b
    else:
        k_a, k_b = 2.0 * (v.alpha + v.beta), 2.0 * (v.beta - v.alpha)
    N2 = J2 * J2 - k_a * J2 + 0.25 * k_b * k_b
    return M2, N2


def report(model: ModelParams, state: PhaseState) -> InvariantReport:
    """Every invariant applicable to the model's variant, evaluated at ``state``."""
    v = model.variant
    rep = InvariantReport(H=hamiltonian(model, state), J=angular_momentum(model, state))
    P1, P2 = linear_momenta(model, state)
    if isinstance(v, Harmonic):
        I1, I2, I4 = fradkin_components(model, state)
        rep.extras.update(I1=I1, I2=I2, I4=I4, E=fradkin_energy(model, state))
    elif isinstance(v, SW):
        I1, I2, I3 = sw_invariants(model, state)
        rep.extras.update(I1=I1, I2=I2, I3=I3)
    else:
        rep.J1, rep.J2 = liouville_integrals(model, state)
        if isinstance(v, (TTW_F, TTW_G)) and np.all(value(rep.J2) > 0):
            rep.M_r, rep.N_phi, rep.lambda_k = complex_factors(model, state)
            a, b = k_exponents(v)
            rep.K_m = (rep.M_r**a) * (rep.N_phi.conj() ** b)
    rep.extras.update(P1=P1, P2=P2)
    return rep
