"""Curvature-dependent trigonometric kernel.

``sin_k``, ``cos_k`` and ``tan_k`` interpolate between the circular
(kappa > 0), linear (kappa = 0) and hyperbolic (kappa < 0) functions.  All
functions accept floats, ndarrays or :class:`~curvedttw.dual.Dual` for ``x``;
``kappa`` is always a plain real number (or a :class:`Curvature`).
"""

import math
from dataclasses import dataclass

import numpy as np

from . import dual
from .dual import Dual, value
from .errors import PoleError

#: below this value of |kappa| x**2 the truncated series replaces the branch formulas
SERIES_THRESHOLD = 1e-8
#: |cos_k| under this is treated as a pole of tan_k
POLE_TOL = 1e-12


@dataclass(frozen=True)
class Curvature:
    kappa: float

    def __post_init__(self):
        if not math.isfinite(self.kappa):
            raise ValueError(f"curvature must be finite, got {self.kappa!r}")

    def __float__(self):
        return float(self.kappa)

    @property
    def geometry(self) -> str:
        if self.kappa > 0:
            return "sphere"
        if self.kappa < 0:
            return "hyperbolic"
        return "flat"


@dataclass(frozen=True)
class RadialDomain:
    r_min: float = 0.0
    r_max: float = math.inf

    def __post_init__(self):
        if not self.r_max > self.r_min:
            raise ValueError("r_max must exceed r_min")

    @classmethod
    def for_curvature(cls, kappa) -> "RadialDomain":
        return cls(0.0, r_max(kappa))

    def contains(self, r) -> bool:
        return bool(np.all((r > self.r_min) & (r < self.r_max)))


def _k(kappa) -> float:
    k = float(kappa)
    if not math.isfinite(k):
        raise ValueError(f"curvature must be finite, got {kappa!r}")
    return k


def _pick(k, x, series, branch):
    if isinstance(x, float):
        return series(k, x) if abs(k) * x * x < SERIES_THRESHOLD else branch(k, x)
    xv = value(x)
    small = abs(k) * xv * xv < SERIES_THRESHOLD
    if np.ndim(small) == 0:
        return series(k, x) if small else branch(k, x)
    if small.all():
        return series(k, x)
    if not small.any():
        return branch(k, x)
    return dual.where(small, series(k, x), branch(k, x))


def _sin_series(k, x):
    u = k * x * x
    return x * (1.0 - u / 6.0 * (1.0 - u / 20.0 * (1.0 - u / 42.0)))


def _cos_series(k, x):
    u = k * x * x
    return 1.0 - u / 2.0 * (1.0 - u / 12.0 * (1.0 - u / 30.0))


def _sin_branch(k, x):
    if k > 0:
        s = math.sqrt(k)
        return dual.sin(s * x) / s
    s = math.sqrt(-k)
    return dual.sinh(s * x) / s


def _cos_branch(k, x):
    if k > 0:
        return dual.cos(math.sqrt(k) * x)
    return dual.cosh(math.sqrt(-k) * x)


def _ones_like(x):
    if isinstance(x, Dual):
        return Dual(np.ones_like(x.v) if np.ndim(x.v) else 1.0, 0.0 * x.d)
    return np.ones_like(x, dtype=float) if np.ndim(x) else 1.0


def sin_k(kappa, x):
    k = _k(kappa)
    if k == 0.0:
        return x
    return _pick(k, x, _sin_series, _sin_branch)


def cos_k(kappa, x):
    k = _k(kappa)
    if k == 0.0:
        return _ones_like(x)
    return _pick(k, x, _cos_series, _cos_branch)


def _check_pole(c, pole_tol):
    if isinstance(c, float):
        if abs(c) < pole_tol:
            raise PoleError("Tan_k evaluated at a pole (|Cos_k| below tolerance)")
        return
    if np.any(np.abs(value(c)) < pole_tol):
        raise PoleError("Tan_k evaluated at a pole (|Cos_k| below tolerance)")


def tan_k(kappa, x, pole_tol=POLE_TOL):
    c = cos_k(kappa, x)
    _check_pole(c, pole_tol)
    return sin_k(kappa, x) / c


def d_sin_k(kappa, x):
    return cos_k(kappa, x)


def d_cos_k(kappa, x):
    return -_k(kappa) * sin_k(kappa, x)


def d_tan_k(kappa, x, pole_tol=POLE_TOL):
    c = cos_k(kappa, x)
    _check_pole(c, pole_tol)
    return 1.0 / (c * c)


def r_max(kappa) -> float:
    """Upper end of the radial domain: pi / (2 sqrt(kappa)) on the sphere, else inf."""
    k = _k(kappa)
    if k > 0:
        return math.pi / (2.0 * math.sqrt(k))
    return math.inf
