"""Time integration of Hamilton's equations.

Two methods are provided: an adaptive Dormand-Prince 5(4) pair with PI
step-size control and the fixed-step implicit midpoint rule (symplectic,
self-adjoint, order 2).  Integration always lands exactly on the sample
times; there is no dense output.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .dynamics import ModelParams, PhaseState, hamiltonian, vector_field_array
from .errors import NoConvergence, PoleError, StepUnderflow, WallHit

logger = logging.getLogger(__name__)

ADAPTIVE = "adaptive_rk"
MIDPOINT = "implicit_midpoint"

COMPLETED = "completed"
WALL_HIT = "wall_hit"
STEP_UNDERFLOW = "step_underflow"

#: distance kept from r = 0
WALL_EPS_ORIGIN = 1e-12
#: relative distance kept from r_max on the sphere
WALL_EPS_REL = 1e-9

# Dormand-Prince 5(4) tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [np.array(row) for row in [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]]
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B_LOW = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])
_E = _B - _B_LOW


@dataclass(frozen=True)
class IntegratorConfig:
    method: str = ADAPTIVE
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    h_init: float = 1e-2
    h_min: float = 1e-12
    t_end: float = 10.0
    sample_dt: float = 0.1

    def __post_init__(self):
        if self.method not in (ADAPTIVE, MIDPOINT):
            raise ValueError(f"unknown method {self.method!r}")
        if not 0 < self.h_min <= self.h_init:
            raise ValueError("need 0 < h_min <= h_init")
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.t_end <= 0 or self.sample_dt <= 0:
            raise ValueError("t_end and sample_dt must be positive")


@dataclass
class Trajectory:
    t: np.ndarray
    y: np.ndarray
    termination: str = COMPLETED
    message: str = ""
    model: Optional[ModelParams] = field(default=None, repr=False)

    def __len__(self):
        return len(self.t)

    @property
    def samples(self):
        return [(float(t), PhaseState.from_array(y)) for t, y in zip(self.t, self.y)]

    @property
    def states(self) -> PhaseState:
        """All samples as one PhaseState of arrays (for vectorised invariants)."""
        return PhaseState(*(self.y[:, i].copy() for i in range(4)))

    @property
    def final(self) -> PhaseState:
        return PhaseState.from_array(self.y[-1])

    def raise_for_termination(self):
        if self.termination == WALL_HIT:
            raise WallHit(self.message)
        if self.termination == STEP_UNDERFLOW:
            raise StepUnderflow(self.message)
        return self


def sample_times(t_end: float, sample_dt: float) -> np.ndarray:
    """Sample grid ``0, dt, 2 dt, ..., t_end``; the last interval may be short."""
    n = int(math.floor(t_end / sample_dt + 1e-9))
    ts = sample_dt * np.arange(n + 1)
    tiny = 1e-9 * sample_dt
    if t_end - ts[-1] > tiny:
        ts = np.append(ts, t_end)
    elif n > 0:
        ts[-1] = t_end
    return ts


def wall_limits(model: ModelParams):
    rmax = model.r_max
    hi = rmax * (1.0 - WALL_EPS_REL) if math.isfinite(rmax) else math.inf
    return WALL_EPS_ORIGIN, hi


def step_rk(model: ModelParams, y, h, k1=None):
    """One Dormand-Prince step; returns ``(y5, error_estimate, f(y5))``."""
    K = np.empty((7, y.size))
    K[0] = vector_field_array(model, y) if k1 is None else k1
    for i in range(1, 7):
        K[i] = vector_field_array(model, y + h * (_A[i] @ K[:i]))
    y5 = y + h * (_B @ K)
    return y5, h * (_E @ K), K[6]


def step_implicit_midpoint(model: ModelParams, state, h, tol=1e-13, max_iter=50):
    """One implicit midpoint step by fixed-point iteration from an Euler predictor."""
    as_state = isinstance(state, PhaseState)
    y0 = state.as_array() if as_state else np.asarray(state, dtype=float)
    y1 = y0 + h * vector_field_array(model, y0)
    prev = math.inf
    for _ in range(max_iter):
        y_new = y0 + h * vector_field_array(model, 0.5 * (y0 + y1))
        res = float(np.max(np.abs(y_new - y1))) / (1.0 + float(np.max(np.abs(y_new))))
        y1 = y_new
        if res <= tol:
            break
        # round-off floor: no further progress but already tiny
        if res >= prev and res <= 100 * tol:
            break
        prev = res
    else:
        raise NoConvergence(f"implicit midpoint did not converge in {max_iter} iterations (h={h})")
    return PhaseState.from_array(y1) if as_state else y1


def _err_norm(err, y0, y1, cfg):
    sc = cfg.abs_tol + cfg.rel_tol * np.maximum(np.abs(y0), np.abs(y1))
    return float(np.sqrt(np.mean((err / sc) ** 2)))


def _run_adaptive(model, y, t, t_target, h, cfg, lo, hi):
    """Advance from t to t_target; returns (y, t, h_next, termination, message)."""
    safety, alpha, beta = 0.9, 0.7 / 5, 0.4 / 5
    err_prev = 1e-4
    k1 = None
    while t < t_target:
        last = False
        h_try = h
        if t + h_try >= t_target:
            h_try = t_target - t
            last = True
        try:
            y_new, err, k_last = step_rk(model, y, h_try, k1)
            ok_eval = bool(np.all(np.isfinite(y_new)))
        except PoleError:
            ok_eval = False
        if ok_eval:
            en = _err_norm(err, y, y_new, cfg)
        if not ok_eval or not math.isfinite(en):
            h = 0.25 * h_try
            k1 = None
        elif en <= 1.0:
            t = t_target if last else t + h_try
            y = y_new
            k1 = k_last
            en = max(en, 1e-10)
            fac = safety * en ** (-alpha) * err_prev**beta
            err_prev = en
            h_new = h_try * min(5.0, max(0.2, fac))
            # clipping the final step to the sample time must not shrink the carried step
            h = max(h, h_new) if last else h_new
            if not lo < y[0] < hi:
                return y, t, h, WALL_HIT, f"r={float(y[0])!r} left ({lo!r}, {hi!r}) at t={t!r}"
            continue
        else:
            h = h_try * max(0.2, safety * en ** (-alpha))
        if h < cfg.h_min:
            return y, t, h, STEP_UNDERFLOW, f"step {h!r} below h_min={cfg.h_min!r} at t={t!r}, r={float(y[0])!r}"
    return y, t, h, COMPLETED, ""


def _run_midpoint(model, y, t, t_target, h, cfg, lo, hi):
    while t < t_target:
        h_try = min(h, t_target - t)
        last = t + h_try >= t_target
        try:
            y = step_implicit_midpoint(model, y, h_try)
        except PoleError as exc:
            return y, t, h, WALL_HIT, f"pole reached at t={t!r}: {exc}"
        t = t_target if last else t + h_try
        if not lo < y[0] < hi:
            return y, t, h, WALL_HIT, f"r={float(y[0])!r} left ({lo!r}, {hi!r}) at t={t!r}"
    return y, t, h, COMPLETED, ""


def integrate(model: ModelParams, state0: PhaseState, cfg: IntegratorConfig) -> Trajectory:
    """Integrate from ``state0`` and record samples every ``cfg.sample_dt``.

    Failures (wall hit, step underflow) do not raise; they end the trajectory
    and are reported in ``termination``/``message``.  Call
    :meth:`Trajectory.raise_for_termination` for exception semantics.
    """
    lo, hi = wall_limits(model)
    y = state0.as_array()
    if not lo < y[0] < hi:
        raise WallHit(f"initial r={float(y[0])!r} outside ({lo!r}, {hi!r})")
    if not math.isfinite(float(hamiltonian(model, state0))):
        raise ValueError("initial energy is not finite")
    ts = sample_times(cfg.t_end, cfg.sample_dt)
    run = _run_adaptive if cfg.method == ADAPTIVE else _run_midpoint
    out_t, out_y = [0.0], [y.copy()]
    t, h = 0.0, cfg.h_init
    termination, message = COMPLETED, ""
    for target in ts[1:]:
        y, t, h, termination, message = run(model, y, t, float(target), h, cfg, lo, hi)
        if termination != COMPLETED:
            logger.warning("integration stopped: %s", message)
            break
        out_t.append(t)
        out_y.append(y.copy())
    return Trajectory(np.array(out_t), np.array(out_y), termination, message, model)


def integrate_fixed(model: ModelParams, state0: PhaseState, h: float, n_steps: int, method=ADAPTIVE):
    """``n_steps`` fixed steps of size ``h`` (used for convergence-order studies)."""
    y = state0.as_array()
    for _ in range(n_steps):
        if method == ADAPTIVE:
            y = step_rk(model, y, h)[0]
        else:
            y = step_implicit_midpoint(model, y, h)
    return PhaseState.from_array(y)
