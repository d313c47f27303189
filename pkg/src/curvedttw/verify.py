"""Batch verification of conservation laws and algebraic identities.

A :class:`Check` maps a batch of phase points to ``(residual, scale)``
arrays; it passes when ``max(residual / scale) <= tol``.  Scales follow one
rule per kind of check:

* bracket checks use :func:`~curvedttw.pbracket.bracket_scale`,
* evolution relations use the larger of the bracket scale and ``|rhs|``,
* algebraic identities use the sum of magnitudes of the terms involved.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .dynamics import SW, CustomF, Harmonic, ModelParams, PhaseState, TTW_F, TTW_G, hamiltonian
from .invariants import (
    complex_factors,
    fradkin_components,
    k_constant,
    linear_momenta,
    liouville_integrals,
    m_r2_alternate,
    moduli_closed_form,
    sw_invariants,
)
from .kgeom import cos_k, sin_k
from .pbracket import H, Observable, bracket_scale, gradient, poisson

BRACKET_TOL = 1e-8
EVOLUTION_TOL = 1e-8
IDENTITY_TOL = 1e-10


@dataclass(frozen=True)
class SamplerBox:
    """Sampling box in ``(r, phi, p_r, p_phi)`` before domain rejection.

    ``r_frac`` caps r at that fraction of r_max on the sphere;
    ``pole_margin`` is the smallest allowed |sin| / |cos| of the angular
    arguments that appear in denominators.
    """

    r: tuple = (0.2, 2.0)
    phi: tuple = (0.0, 2 * math.pi)
    p_r: tuple = (-2.0, 2.0)
    p_phi: tuple = (-2.0, 2.0)
    r_frac: float = 0.85
    pole_margin: float = 0.1
    j2_min: float = 1e-3

    @classmethod
    def from_dict(cls, d: dict) -> "SamplerBox":
        d = dict(d)
        for key in ("r", "phi", "p_r", "p_phi"):
            if key in d:
                d[key] = tuple(float(v) for v in d[key])
        return cls(**d)

    def to_dict(self) -> dict:
        return {"r": list(self.r), "phi": list(self.phi), "p_r": list(self.p_r),
                "p_phi": list(self.p_phi), "r_frac": self.r_frac,
                "pole_margin": self.pole_margin, "j2_min": self.j2_min}


def _angular_ok(variant, phi, margin):
    if isinstance(variant, SW):
        return (np.abs(np.sin(phi)) > margin) & (np.abs(np.cos(phi)) > margin)
    if isinstance(variant, (TTW_F, TTW_G)):
        x = float(variant.m) * phi
        ok = np.abs(np.sin(x)) > margin
        if isinstance(variant, TTW_G):
            ok &= np.abs(np.cos(x)) > margin
        return ok
    return np.ones_like(phi, dtype=bool)


def sample_states(model: ModelParams, n: int, rng: np.random.Generator, box: SamplerBox = SamplerBox(),
                  max_rounds: int = 1000) -> PhaseState:
    """``n`` uniform draws from ``box`` restricted to admissible points.

    Admissible means inside the radial domain, away from angular poles and,
    for separable variants, with ``J2 > box.j2_min``.
    """
    r_hi = min(box.r[1], box.r_frac * model.r_max)
    if not r_hi > box.r[0]:
        raise ValueError(f"sampling box r={box.r} is empty for kappa={model.kappa}")
    got = [[] for _ in range(4)]
    count = 0
    for _ in range(max_rounds):
        k = max(2 * (n - count), 16)
        r = rng.uniform(box.r[0], r_hi, k)
        phi = rng.uniform(*box.phi, k)
        p_r = rng.uniform(*box.p_r, k)
        p_phi = rng.uniform(*box.p_phi, k)
        ok = _angular_ok(model.variant, phi, box.pole_margin)
        if isinstance(model.variant, (TTW_F, TTW_G, CustomF)) and ok.any():
            st = PhaseState(r[ok], phi[ok], p_r[ok], p_phi[ok])
            _, J2 = liouville_integrals(model, st)
            sub = J2 > box.j2_min
            idx = np.flatnonzero(ok)
            ok[idx[~sub]] = False
        for g, a in zip(got, (r, phi, p_r, p_phi)):
            g.append(a[ok])
        count += int(ok.sum())
        if count >= n:
            break
    else:
        raise ValueError("could not find enough admissible phase points; widen the sampling box")
    return PhaseState(*(np.concatenate(g)[:n] for g in got))


@dataclass
class Check:
    name: str
    kind: str
    tol: float
    fn: Callable = field(repr=False)

    def run(self, model, states):
        res, scale = self.fn(model, states)
        rel = np.abs(res) / scale
        worst = float(np.max(rel)) if np.size(rel) else 0.0
        if not math.isfinite(worst):
            worst = math.inf
        return worst


@dataclass
class CheckResult:
    name: str
    kind: str
    worst: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.worst <= self.tol

    def to_dict(self) -> dict:
        return {"check": self.name, "kind": self.kind, "worst": self.worst,
                "tol": self.tol, "passed": self.passed}


def _bracket_check(name, obs: Observable, inv_model=None):
    def fn(model, states):
        f0, df = gradient(inv_model or model, obs, states)
        h0, dh = gradient(model, H, states)
        return poisson(df, dh), bracket_scale(f0, h0, df, dh)
    return Check(f"{{{name},H}}", "bracket", BRACKET_TOL, fn)


def _identity_check(name, terms):
    """``terms(model, states)`` returns (lhs, rhs, magnitude)."""
    def fn(model, states):
        lhs, rhs, mag = terms(model, states)
        return lhs - rhs, np.maximum(mag, np.finfo(float).tiny)
    return Check(name, "identity", IDENTITY_TOL, fn)


def _evolution_check(name, obs: Observable, rate, partner, sign):
    """``{obs, H} = sign * rate * lambda * partner``."""
    def fn(model, states):
        f0, df = gradient(model, obs, states)
        h0, dh = gradient(model, H, states)
        lhs = poisson(df, dh)
        _, _, lam = complex_factors(model, states)
        rhs = sign * rate(model) * lam * partner.eval(model, states)
        return lhs - rhs, np.maximum(bracket_scale(f0, h0, df, dh), np.abs(rhs))
    return Check(name, "evolution", EVOLUTION_TOL, fn)


def _obs(fn, label):
    return Observable(fn, label)


def _harmonic_checks(inv_model):
    I = [_obs(lambda m, s, i=i: fradkin_components(m, s)[i], n) for i, n in enumerate(("I1", "I2", "I4"))]
    J = _obs(lambda m, s: s.p_phi, "J")

    def fradkin(model, s):
        I1, I2, I4 = fradkin_components(inv_model or model, s)
        w2J2 = model.omega0**2 * s.p_phi**2
        return I4 * I4, I1 * I2 - w2J2, I4 * I4 + np.abs(I1 * I2) + w2J2

    def energy(model, s):
        I1, I2, _ = fradkin_components(inv_model or model, s)
        kJ2 = model.kappa * s.p_phi**2
        Hv = hamiltonian(model, s)
        return 0.5 * (I1 + I2 + kJ2), Hv, 0.5 * (np.abs(I1) + np.abs(I2) + np.abs(kJ2)) + np.abs(Hv)

    def momenta(model, s):
        P1, P2 = linear_momenta(model, s)
        C, S = cos_k(model.kappa, s.r), sin_k(model.kappa, s.r)
        rhs = s.p_r**2 + (C / S) ** 2 * s.p_phi**2
        return P1 * P1 + P2 * P2, rhs, rhs

    return ([_bracket_check("J", J, inv_model)]
            + [_bracket_check(o.label, o, inv_model) for o in I]
            + [_identity_check("I4^2 = I1 I2 - w^2 J^2", fradkin),
               _identity_check("(I1 + I2 + k J^2)/2 = H", energy),
               _identity_check("P1^2 + P2^2 = p_r^2 + (C/S)^2 p_phi^2", momenta)])


def _sw_checks(inv_model):
    I = [_obs(lambda m, s, i=i: sw_invariants(m, s)[i], n) for i, n in enumerate(("I1", "I2", "I3"))]

    def energy(model, s):
        I1, I2, I3 = sw_invariants(inv_model or model, s)
        kI3 = model.kappa * I3
        Hv = hamiltonian(model, s)
        return I1 + I2 + kI3, 2.0 * Hv, np.abs(I1) + np.abs(I2) + np.abs(kI3)

    return ([_bracket_check(o.label, o, inv_model) for o in I]
            + [_identity_check("I1 + I2 + k I3 = 2H", energy)])


def _separable_checks(model, inv_model):
    J1 = _obs(lambda m, s: liouville_integrals(m, s)[0], "J1")
    J2 = _obs(lambda m, s: liouville_integrals(m, s)[1], "J2")

    def j1_2h(model, s):
        J1v, _ = liouville_integrals(inv_model or model, s)
        Hv = hamiltonian(model, s)
        return J1v, 2.0 * Hv, np.abs(J1v) + 2.0 * np.abs(Hv)

    checks = [_bracket_check("J1", J1, inv_model), _bracket_check("J2", J2, inv_model),
              _identity_check("J1 = 2H", j1_2h)]
    if not isinstance(model.variant, (TTW_F, TTW_G)):
        return checks

    ReK = _obs(lambda m, s: k_constant(m, s).re, "ReK")
    ImK = _obs(lambda m, s: k_constant(m, s).im, "ImK")
    ReM = _obs(lambda m, s: complex_factors(m, s)[0].re, "ReM")
    ImM = _obs(lambda m, s: complex_factors(m, s)[0].im, "ImM")
    ReN = _obs(lambda m, s: complex_factors(m, s)[1].re, "ReN")
    ImN = _obs(lambda m, s: complex_factors(m, s)[1].im, "ImN")
    mod_M = _obs(lambda m, s: complex_factors(m, s)[0].abs2(), "|M|^2")
    mod_N = _obs(lambda m, s: complex_factors(m, s)[1].abs2(), "|N|^2")

    def rate_m(model):
        v = model.variant
        return float(v.m) if isinstance(v, TTW_F) else 2.0 * float(v.m)

    def moduli(i):
        def terms(model, s):
            M, N, _ = complex_factors(inv_model or model, s)
            closed = moduli_closed_form(model, s)[i]
            direct = (M, N)[i]
            return direct.abs2(), closed, np.abs(direct.re) ** 2 + np.abs(direct.im) ** 2 + np.abs(closed)
        return terms

    def m_r2_forms(model, s):
        M, _, _ = complex_factors(inv_model or model, s)
        alt = m_r2_alternate(model, s)
        return M.im, alt, np.abs(M.im) + np.abs(alt)

    return checks + [
        _bracket_check("ReK", ReK, inv_model),
        _bracket_check("ImK", ImK, inv_model),
        _bracket_check("|M|^2", mod_M, inv_model),
        _bracket_check("|N|^2", mod_N, inv_model),
        _evolution_check("{ReM,H} = -2 lam ImM", ReM, lambda m: 2.0, ImM, -1.0),
        _evolution_check("{ImM,H} = 2 lam ReM", ImM, lambda m: 2.0, ReM, 1.0),
        _evolution_check("{ReN,H} = -m lam ImN", ReN, rate_m, ImN, -1.0),
        _evolution_check("{ImN,H} = m lam ReN", ImN, rate_m, ReN, 1.0),
        _identity_check("|M_r|^2 closed form", moduli(0)),
        _identity_check("|N_phi|^2 closed form", moduli(1)),
        _identity_check("Im M_r two forms", m_r2_forms),
    ]


def checks_for(model: ModelParams, corrupt_omega: float = 0.0):
    """Every check applicable to the model's variant.

    ``corrupt_omega`` perturbs omega0 inside the invariants only (the
    Hamiltonian keeps the true value); it exists as a negative control.
    """
    inv_model = model.with_(omega0=model.omega0 + corrupt_omega) if corrupt_omega else None
    v = model.variant
    if isinstance(v, Harmonic):
        return _harmonic_checks(inv_model)
    if isinstance(v, SW):
        return _sw_checks(inv_model)
    return _separable_checks(model, inv_model)


def run_checks(model: ModelParams, n_points: int, seed: int = 0, box: SamplerBox = SamplerBox(),
               corrupt_omega: float = 0.0, states: Optional[PhaseState] = None):
    """Sample admissible points and evaluate every applicable check on them."""
    if n_points < 1:
        raise ValueError("n_points must be >= 1")
    if states is None:
        states = sample_states(model, n_points, np.random.default_rng(seed), box)
    return [CheckResult(c.name, c.kind, c.run(model, states), c.tol)
            for c in checks_for(model, corrupt_omega)]
