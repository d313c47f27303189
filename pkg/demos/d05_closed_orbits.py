"""
Closed orbits
=============

Superintegrable systems have periodic bounded orbits.  The recurrence
search integrates a trajectory and locates its closest return to the
initial phase point.
"""

import math

from curvedttw.closure import recurrence
from curvedttw.dynamics import Harmonic, ModelParams, PhaseState, TTW_F
from curvedttw.integrate import IntegratorConfig

cfg = IntegratorConfig(rel_tol=1e-11, abs_tol=1e-13, sample_dt=0.05)

# flat oscillator: every orbit closes after one period 2 pi / omega0
rec = recurrence(ModelParams(0.0, 1.0, Harmonic()), PhaseState(1.0, 0.3, 0.4, 0.7), 7.0, cfg)
print(f"flat oscillator: distance {rec.distance:.1e} at t={rec.time:.10f} (2 pi = {2 * math.pi:.10f})")

# TTW on the sphere with m = 2
rec = recurrence(ModelParams(1.0, 1.0, TTW_F("2", 1.0, 0.5)), PhaseState(0.5, 0.7, 0.1, 0.8), 200.0, cfg, tol=1e-4)
print(f"TTW m=2 on the sphere: distance {rec.distance:.1e} at t={rec.time:.6f}")
