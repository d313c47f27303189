"""Numerical Poisson brackets on the canonical chart ``(r, phi, p_r, p_phi)``.

Gradients are taken by forward-mode dual arithmetic when the observable can
be evaluated on :class:`~curvedttw.dual.Dual` inputs and by central
differences otherwise.  All functions are vectorised: the state fields may
be ndarrays of sample points.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dual import Dual
from .dynamics import LiftError, PhaseState, hamiltonian
from .errors import CurvedTTWError, EvalError

#: relative step of the central-difference fallback
FD_STEP = 1e-6


@dataclass(frozen=True)
class Observable:
    eval: Callable
    label: str = "f"
    #: whether ``eval`` may be handed Dual-valued states
    dual: bool = True

    def __call__(self, model, state):
        return self.eval(model, state)


H = Observable(hamiltonian, "H")


def _coords(state):
    return [np.asarray(x, dtype=float) if np.ndim(x) else float(x)
            for x in (state.r, state.phi, state.p_r, state.p_phi)]


def _dual_gradient(model, obs, x):
    seeded = Dual.variables(*x)
    out = obs.eval(model, PhaseState(*seeded))
    if isinstance(out, Dual):
        shape = np.broadcast(out.v, x[0]).shape
        return np.broadcast_to(out.v, shape), np.broadcast_to(out.d, (4,) + shape)
    shape = np.broadcast(out, x[0]).shape
    return np.broadcast_to(out, shape), np.zeros((4,) + shape)


def _fd_gradient(model, obs, x):
    try:
        f0 = obs.eval(model, PhaseState(*x))
        grads = []
        for i in range(4):
            h = FD_STEP * (1.0 + np.abs(x[i]))
            up = list(x)
            dn = list(x)
            up[i] = x[i] + h
            dn[i] = x[i] - h
            grads.append((obs.eval(model, PhaseState(*up)) - obs.eval(model, PhaseState(*dn))) / (2.0 * h))
    except CurvedTTWError as exc:
        raise EvalError(f"observable {obs.label!r} faulted inside the difference stencil: {exc}") from exc
    shape = np.broadcast(f0, x[0]).shape
    return np.broadcast_to(f0, shape), np.stack([np.broadcast_to(g, shape) for g in grads])


def gradient(model, obs: Observable, state, mode="auto"):
    """Value of ``obs`` and its gradient (leading axis: r, phi, p_r, p_phi).

    ``mode`` is ``"dual"``, ``"fd"`` or ``"auto"`` (dual, falling back to
    central differences when the observable refuses dual input).
    """
    x = _coords(state)
    if mode == "fd" or (mode == "auto" and not obs.dual):
        return _fd_gradient(model, obs, x)
    if mode not in ("auto", "dual"):
        raise ValueError(f"unknown differentiation mode {mode!r}")
    try:
        return _dual_gradient(model, obs, x)
    except (LiftError, TypeError):
        if mode == "dual":
            raise
        return _fd_gradient(model, obs, x)


def poisson(df, dg):
    """Bracket from two gradients ordered (r, phi, p_r, p_phi)."""
    return df[0] * dg[2] - df[2] * dg[0] + df[1] * dg[3] - df[3] * dg[1]


def bracket_scale(f0, g0, df, dg):
    """``max(1, |f|, |g|, |grad f| |grad g|)``, the normalisation used by every check."""
    nf = np.sqrt(np.sum(df * df, axis=0))
    ng = np.sqrt(np.sum(dg * dg, axis=0))
    return np.maximum.reduce([np.ones_like(nf), np.abs(f0), np.abs(g0), nf * ng])


def bracket_scaled(model, f: Observable, g: Observable, state, mode="auto"):
    """``({f, g}, scale)`` at ``state``."""
    f0, df = gradient(model, f, state, mode)
    g0, dg = gradient(model, g, state, mode)
    return poisson(df, dg), bracket_scale(f0, g0, df, dg)


def bracket(model, f: Observable, g: Observable, state, mode="auto"):
    return bracket_scaled(model, f, g, state, mode)[0]


def bracket_antisymmetry_check(model, f: Observable, g: Observable, state, mode="auto"):
    """``{f, g} + {g, f}``; vanishes for a sound engine."""
    return bracket(model, f, g, state, mode) + bracket(model, g, f, state, mode)


def bracket_observable(f: Observable, g: Observable, mode="auto") -> Observable:
    """``{f, g}`` packaged as an observable (differentiated by finite differences)."""
    return Observable(lambda model, state: bracket(model, f, g, state, mode),
                      f"{{{f.label},{g.label}}}", dual=False)


def product(f: Observable, g: Observable) -> Observable:
    return Observable(lambda model, state: f.eval(model, state) * g.eval(model, state),
                      f"{f.label}*{g.label}", dual=f.dual and g.dual)
