"""
The curved oscillator potential
===============================

U(r; k) = omega0^2 Tan_k(r)^2 / 2 for k = -2..2.  Curves for k < 0 lie
below the flat (dashed) parabola, curves for k > 0 above it, and on the sphere the
potential diverges at r = pi / (2 sqrt(k)).
"""

import sys

import numpy as np

from curvedttw.cli import potential_curves
from curvedttw.svg import Series, line_chart

kappas = (-2.0, -1.0, 0.0, 1.0, 2.0)
r = np.linspace(0.0, 1.4, 281)
curves = potential_curves(1.0, kappas, r)

for k, u in zip(kappas, curves):
    print(f"k={k:+.0f}: U(0.5)={u[100]:.6f}  U(1.0)={u[200]:.6f}")

series = [Series(f"kappa = {k:g}", r, u, dashed=k == 0) for k, u in zip(kappas, curves)]
out = sys.argv[1] if len(sys.argv) > 1 else "potential.svg"
with open(out, "w") as fh:
    fh.write(line_chart(series, title="U(r; kappa), omega0 = 1", xlabel="r", ylabel="U", y_max=2.0))
print("wrote", out)
