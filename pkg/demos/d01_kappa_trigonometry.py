"""
Trigonometry with a curvature parameter
=======================================

The functions Sin_k, Cos_k and Tan_k interpolate between the circular
functions on the sphere (k > 0), the identity on the plane (k = 0) and the
hyperbolic functions (k < 0).
"""

import numpy as np

from curvedttw.kgeom import Curvature, cos_k, r_max, sin_k, tan_k

# one radius, three geometries
x = 0.6
for k in (1.0, 0.0, -1.0):
    print(f"{Curvature(k).geometry:>10}: Sin={sin_k(k, x):.12f}  Cos={cos_k(k, x):.12f}  Tan={tan_k(k, x):.12f}")

# the Pythagorean identity Cos^2 + k Sin^2 = 1 holds for every k
k = np.linspace(-4, 4, 9)
print("max |Cos^2 + k Sin^2 - 1| =", max(abs(cos_k(a, x) ** 2 + a * sin_k(a, x) ** 2 - 1) for a in k))

# near k = 0 a short series in k x^2 replaces the branch formulas; the
# leading corrections are -k x^3 / 6 and -k x^2 / 2 from either side
for tiny in (1e-4, -1e-4, 1e-8, -1e-8):
    ds = (sin_k(tiny, x) - x) / (-tiny * x**3 / 6)
    dc = (cos_k(tiny, x) - 1) / (-tiny * x**2 / 2)
    print(f"k={tiny:+.0e}: (Sin_k - x)/(-k x^3/6) = {ds:.8f}   (Cos_k - 1)/(-k x^2/2) = {dc:.8f}")

# on the sphere the radial domain ends where Cos_k vanishes
print("r_max(k=1) =", r_max(1.0), "  r_max(k=-1) =", r_max(-1.0))
