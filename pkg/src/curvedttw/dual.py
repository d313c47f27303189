"""Multi-directional forward-mode dual numbers.

A :class:`Dual` carries a value ``v`` (scalar or ndarray) and a tangent
array ``d`` whose leading axis enumerates seed directions, so one pass
through an expression yields the full gradient.  The elementary functions
in this module (``sin``, ``cos``, ...) dispatch on the argument type and
fall through to :mod:`math` / :mod:`numpy` for plain numbers.
"""

import math
import numbers

import numpy as np


class Dual:
    __slots__ = ("v", "d")
    # keep numpy from broadcasting over a Dual on the left of a binary op
    __array_ufunc__ = None

    def __init__(self, v, d):
        self.v = v
        self.d = d

    @classmethod
    def variables(cls, *values):
        """Seed one Dual per value, each along its own unit direction."""
        n = len(values)
        out = []
        for i, val in enumerate(values):
            val = np.asarray(val, dtype=float) if not isinstance(val, float) else val
            shape = np.shape(val)
            d = np.zeros((n,) + shape)
            d[i] = 1.0
            out.append(cls(val, d))
        return out

    def __repr__(self):
        return f"Dual({self.v!r}, {self.d!r})"

    def __neg__(self):
        return Dual(-self.v, -self.d)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, Dual):
            return Dual(self.v + other.v, self.d + other.d)
        return Dual(self.v + other, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Dual):
            return Dual(self.v - other.v, self.d - other.d)
        return Dual(self.v - other, self.d)

    def __rsub__(self, other):
        return Dual(other - self.v, -self.d)

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(self.v * other.v, self.d * other.v + self.v * other.d)
        return Dual(self.v * other, self.d * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual):
            inv = 1.0 / other.v
            q = self.v * inv
            return Dual(q, (self.d - q * other.d) * inv)
        return Dual(self.v / other, self.d / other)

    def __rtruediv__(self, other):
        q = other / self.v
        return Dual(q, -q / self.v * self.d)

    def __pow__(self, n):
        if isinstance(n, Dual):
            raise TypeError("Dual ** Dual is not supported")
        if isinstance(n, numbers.Integral):
            if n == 0:
                return Dual(np.ones_like(self.v) if np.ndim(self.v) else 1.0, 0.0 * self.d)
            if n == 1:
                return self
            if n == 2:
                return Dual(self.v * self.v, 2.0 * self.v * self.d)
        return Dual(self.v**n, n * self.v ** (n - 1) * self.d)

    def __abs__(self):
        return Dual(abs(self.v), np.sign(self.v) * self.d)

    # comparisons act on the value only
    def __lt__(self, other):
        return self.v < value(other)

    def __le__(self, other):
        return self.v <= value(other)

    def __gt__(self, other):
        return self.v > value(other)

    def __ge__(self, other):
        return self.v >= value(other)


def value(x):
    """Primal part of ``x`` (identity for non-Dual input)."""
    return x.v if isinstance(x, Dual) else x


def grad(x, n):
    """Tangent array of ``x`` with ``n`` directions (zeros for constants)."""
    if isinstance(x, Dual):
        return x.d
    return np.zeros((n,) + np.shape(x))


def is_dual(*xs):
    return any(isinstance(x, Dual) for x in xs)


def _lift(fn_math, fn_np, deriv):
    def f(x):
        if isinstance(x, Dual):
            return Dual(fn_np(x.v), deriv(x.v) * x.d)
        if isinstance(x, (float, int)):
            return fn_math(x)
        return fn_np(x)

    return f


sin = _lift(math.sin, np.sin, np.cos)
cos = _lift(math.cos, np.cos, lambda v: -np.sin(v))
sinh = _lift(math.sinh, np.sinh, np.cosh)
cosh = _lift(math.cosh, np.cosh, np.sinh)
sqrt = _lift(math.sqrt, np.sqrt, lambda v: 0.5 / np.sqrt(v))
exp = _lift(math.exp, np.exp, np.exp)


def where(mask, a, b):
    """Elementwise select that understands Duals (mask is a plain bool array)."""
    if not (isinstance(a, Dual) or isinstance(b, Dual)):
        return np.where(mask, a, b)
    av, bv = value(a), value(b)
    shape = np.broadcast(av, bv, mask).shape
    if isinstance(a, Dual) and isinstance(b, Dual):
        n = a.d.shape[0]
    else:
        n = (a if isinstance(a, Dual) else b).d.shape[0]
    ad = np.broadcast_to(grad(a, n), (n,) + shape) if isinstance(a, Dual) else np.zeros((n,) + shape)
    bd = np.broadcast_to(grad(b, n), (n,) + shape) if isinstance(b, Dual) else np.zeros((n,) + shape)
    return Dual(np.where(mask, av, bv), np.where(mask, ad, bd))
