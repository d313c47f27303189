"""Phase-space recurrence: how closely a trajectory returns to its start."""

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from .dynamics import ModelParams, PhaseState, vector_field_array
from .integrate import COMPLETED, IntegratorConfig, integrate


@dataclass(frozen=True)
class Recurrence:
    distance: float
    time: float
    termination: str = COMPLETED


def _offset(y, y0):
    d = np.asarray(y, dtype=float) - y0
    d[..., 1] = (d[..., 1] + math.pi) % (2 * math.pi) - math.pi
    return d


def phase_distance(y, y0) -> np.ndarray:
    """Euclidean distance in (r, phi, p_r, p_phi) with phi compared modulo 2 pi."""
    return np.sqrt(np.sum(_offset(y, y0) ** 2, axis=-1))


def _advance(model, y, dt, cfg):
    if dt <= 0:
        return y
    sub = replace(cfg, t_end=dt, sample_dt=dt, h_init=min(cfg.h_init, dt))
    tr = integrate(model, PhaseState.from_array(y), sub)
    tr.raise_for_termination()
    return tr.y[-1]


def _refine(model, ya, ta, tb, y0, cfg):
    def g(t):
        y = _advance(model, ya, t - ta, cfg)
        return float(_offset(y, y0) @ vector_field_array(model, y))

    t_star = brentq(g, ta, tb, xtol=1e-14, rtol=4 * np.finfo(float).eps)
    return float(phase_distance(_advance(model, ya, t_star - ta, cfg), y0)), float(t_star)


def recurrence(model: ModelParams, state0: PhaseState, t_max: float, cfg: IntegratorConfig,
               tol: float = 0.0, window: float = 20.0, n_refine: int = 10) -> Recurrence:
    """Minimal ``|state(t) - state(0)|`` over ``0 < t <= t_max``.

    The trajectory is sampled every ``cfg.sample_dt`` in windows of length
    ``window``; local minima of the squared distance are then located by
    root-finding on its time derivative, re-integrating from the preceding
    sample.  The scan stops early once a recurrence within ``tol`` is found.
    If no approach is found the distance at ``t_max`` is reported.
    """
    fine = replace(cfg, rel_tol=min(cfg.rel_tol, 1e-12), abs_tol=min(cfg.abs_tol, 1e-14))
    y0 = state0.as_array()
    best = Recurrence(math.inf, 0.0)
    t0, start = 0.0, state0
    while t0 < t_max:
        span = min(window, t_max - t0)
        tr = integrate(model, start, replace(cfg, t_end=span))
        tr.raise_for_termination()
        t = tr.t + t0
        dist = phase_distance(tr.y, y0)
        # half the time derivative of the squared distance
        slope = np.array([_offset(y, y0) @ vector_field_array(model, y) for y in tr.y])
        if dist[-1] < best.distance and slope[-1] < 0:
            best = Recurrence(float(dist[-1]), float(t[-1]))
        cand = np.flatnonzero((slope[:-1] < 0) & (slope[1:] >= 0))
        if t0 == 0.0:
            cand = cand[cand > 0]
        order = np.argsort(np.minimum(dist[cand], dist[cand + 1]))[:n_refine]
        for i in cand[order]:
            d, ts = _refine(model, tr.y[i], t[i], t[i + 1], y0, fine)
            if d < best.distance:
                best = Recurrence(d, ts)
        if best.distance <= tol:
            break
        t0 += span
        start = tr.final
    if math.isinf(best.distance):
        # no return within t_max: report the end point
        best = Recurrence(float(dist[-1]), float(t[-1]))
    return best
