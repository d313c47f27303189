"""Phase space, potential family and Hamilton's equations on curved 2-D spaces.

Everything is written in canonical variables ``(r, phi, p_r, p_phi)`` with
``p_phi = Sin_k(r)**2 * dphi/dt``.  The Hamiltonian is

    H = (p_r**2 + p_phi**2 / S**2) / 2 + omega0**2 T**2 / 2 + F(phi) / (2 S**2)

with ``S = Sin_k(r)``, ``T = Tan_k(r)`` and an angular function ``F`` that
depends on the potential variant.
"""

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Union

import numpy as np

from . import dual
from .dual import Dual, value
from .errors import PoleError
from .kgeom import POLE_TOL, cos_k, r_max, sin_k, tan_k


class LiftError(TypeError):
    """Raised when a quantity cannot be carried through dual arithmetic."""


@dataclass(frozen=True)
class PhaseState:
    r: float
    phi: float
    p_r: float
    p_phi: float

    def as_array(self) -> np.ndarray:
        return np.array([self.r, self.phi, self.p_r, self.p_phi], dtype=float)

    @classmethod
    def from_array(cls, a) -> "PhaseState":
        return cls(*(float(v) for v in a))

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite([value(v) for v in (self.r, self.phi, self.p_r, self.p_phi)])))


def as_fraction(m) -> Fraction:
    """Parse an angular frequency given as int, Fraction, float or ``"p/q"``."""
    if isinstance(m, str):
        m = Fraction(m.strip())
    elif isinstance(m, float):
        m = Fraction(m).limit_denominator(1000)
    else:
        m = Fraction(m)
    if m <= 0:
        raise ValueError(f"m must be a positive rational, got {m}")
    return m


# --- potential variants ---

@dataclass(frozen=True)
class Harmonic:
    pass


@dataclass(frozen=True)
class SW:
    """Smorodinsky-Winternitz barriers ``k2/(S cos phi)**2 + k3/(S sin phi)**2``.

    The couplings enter without the 1/2 prefactor of the TTW forms, so the
    equivalent angular function is ``F = 2 k2 / cos**2 + 2 k3 / sin**2``.
    """

    k2: float
    k3: float


@dataclass(frozen=True)
class TTW_F:
    """``F_m = k_a / sin**2(m phi) + k_b cos(m phi) / sin**2(m phi)``."""

    m: Fraction
    k_a: float
    k_b: float

    def __post_init__(self):
        object.__setattr__(self, "m", as_fraction(self.m))


@dataclass(frozen=True)
class TTW_G:
    """``G_m = alpha / cos**2(m phi) + beta / sin**2(m phi)``."""

    m: Fraction
    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "m", as_fraction(self.m))

    def as_ttw_f(self) -> TTW_F:
        """The same angular function written in F form (frequency doubled)."""
        return TTW_F(2 * self.m, 2.0 * (self.alpha + self.beta), 2.0 * (self.beta - self.alpha))


@dataclass(frozen=True)
class CustomF:
    """User angular function; ``F(phi)`` must return ``(F, dF/dphi)``."""

    F: Callable = field(compare=False)
    label: str = "custom"


PotentialVariant = Union[Harmonic, SW, TTW_F, TTW_G, CustomF]


@dataclass(frozen=True)
class ModelParams:
    kappa: float
    omega0: float = 1.0
    variant: PotentialVariant = field(default_factory=Harmonic)

    def __post_init__(self):
        object.__setattr__(self, "kappa", float(self.kappa))
        object.__setattr__(self, "omega0", float(self.omega0))
        if not (math.isfinite(self.kappa) and math.isfinite(self.omega0)):
            raise ValueError("kappa and omega0 must be finite")
        if self.omega0 < 0:
            raise ValueError("omega0 must be non-negative")

    @property
    def r_max(self) -> float:
        return r_max(self.kappa)

    def with_(self, **changes) -> "ModelParams":
        return replace(self, **changes)


# --- angular part ---

def _mphi(m: Fraction, phi):
    return (m.numerator * phi) / m.denominator


def _check(x, what, pole_tol):
    if isinstance(x, float):
        if abs(x) < pole_tol:
            raise PoleError(f"singularity: {what} vanishes")
        return
    if np.any(np.abs(value(x)) < pole_tol):
        raise PoleError(f"singularity: {what} vanishes")


def _angular(variant, phi, derivative=True, pole_tol=POLE_TOL):
    if isinstance(variant, Harmonic):
        return 0.0, 0.0
    if isinstance(variant, SW):
        s, c = dual.sin(phi), dual.cos(phi)
        _check(s, "sin(phi)", pole_tol)
        _check(c, "cos(phi)", pole_tol)
        F = 2.0 * variant.k2 / (c * c) + 2.0 * variant.k3 / (s * s)
        if not derivative:
            return F, None
        dF = 4.0 * variant.k2 * s / (c * c * c) - 4.0 * variant.k3 * c / (s * s * s)
        return F, dF
    if isinstance(variant, TTW_F):
        m = variant.m
        x = _mphi(m, phi)
        s, c = dual.sin(x), dual.cos(x)
        _check(s, "sin(m phi)", pole_tol)
        s2 = s * s
        F = (variant.k_a + variant.k_b * c) / s2
        if not derivative:
            return F, None
        mf = float(m)
        dF = -mf * (2.0 * variant.k_a * c + variant.k_b * (s2 + 2.0 * c * c)) / (s2 * s)
        return F, dF
    if isinstance(variant, TTW_G):
        m = variant.m
        x = _mphi(m, phi)
        s, c = dual.sin(x), dual.cos(x)
        _check(s, "sin(m phi)", pole_tol)
        _check(c, "cos(m phi)", pole_tol)
        F = variant.alpha / (c * c) + variant.beta / (s * s)
        if not derivative:
            return F, None
        mf = float(m)
        dF = 2.0 * mf * (variant.alpha * s / (c * c * c) - variant.beta * c / (s * s * s))
        return F, dF
    if isinstance(variant, CustomF):
        if isinstance(phi, Dual):
            F0, dF0 = variant.F(phi.v)
            if derivative:
                raise LiftError("CustomF supplies no second derivative; F' cannot be lifted")
            return Dual(F0, dF0 * phi.d), None
        return variant.F(phi)
    raise TypeError(f"unknown potential variant {variant!r}")


def angular_factor(variant, phi, pole_tol=POLE_TOL):
    """Angular function ``F(phi)`` of the variant and its derivative."""
    return _angular(variant, phi, True, pole_tol)


def _radial(model, r):
    S = sin_k(model.kappa, r)
    _check(S, "Sin_k(r)", POLE_TOL)
    return S


def _is_harmonic(variant):
    return isinstance(variant, Harmonic)


def potential(model: ModelParams, r, phi):
    T = tan_k(model.kappa, r)
    U = 0.5 * model.omega0**2 * T * T
    v = model.variant
    if _is_harmonic(v):
        return U
    S = _radial(model, r)
    S2 = S * S
    if isinstance(v, SW):
        s, c = dual.sin(phi), dual.cos(phi)
        _check(s, "sin(phi)", POLE_TOL)
        _check(c, "cos(phi)", POLE_TOL)
        return U + v.k2 / (S2 * c * c) + v.k3 / (S2 * s * s)
    F, _ = _angular(v, phi, derivative=False)
    return U + 0.5 * F / S2


def kinetic(model: ModelParams, state: PhaseState):
    S = _radial(model, state.r)
    return 0.5 * (state.p_r * state.p_r + state.p_phi * state.p_phi / (S * S))


def hamiltonian(model: ModelParams, state: PhaseState):
    return kinetic(model, state) + potential(model, state.r, state.phi)


def vector_field(model: ModelParams, state: PhaseState):
    """Hamilton's equations ``(dr, dphi, dp_r, dp_phi)`` with analytic partials."""
    k = model.kappa
    r, p_phi = state.r, state.p_phi
    S = _radial(model, r)
    C = cos_k(k, r)
    _check(C, "Cos_k(r)", POLE_TOL)
    F, dF = _angular(model.variant, state.phi)
    S2 = S * S
    dphi = p_phi / S2
    dp_r = (p_phi * p_phi + F) * C / (S2 * S) - model.omega0**2 * S / (C * C * C)
    dp_phi = -0.5 * dF / S2
    return state.p_r, dphi, dp_r, dp_phi


def vector_field_array(model: ModelParams, y) -> np.ndarray:
    """``vector_field`` on a flat ``[r, phi, p_r, p_phi]`` array (integrator form)."""
    return np.array(vector_field(model, PhaseState(*y.tolist())), dtype=float)
