"""
Conservation checked by Poisson brackets
========================================

Gradients come from forward-mode dual numbers, so {f, H} can be evaluated
to round-off at thousands of random phase points at once.  Corrupting the
frequency inside the invariants shows that the checks do detect errors.
"""

from curvedttw.dynamics import Harmonic, ModelParams, TTW_F
from curvedttw.verify import run_checks

for model in (ModelParams(-1.0, 1.0, Harmonic()), ModelParams(0.37, 1.0, TTW_F("5/2", 1.0, 0.5))):
    print(f"\nkappa={model.kappa}, {type(model.variant).__name__}")
    for res in run_checks(model, n_points=1000, seed=3):
        print(f"  {res.name:<40} {res.worst:.2e}  {'PASS' if res.passed else 'FAIL'}")

# negative control: omega0 off by 1e-3 in the invariants only
bad = run_checks(ModelParams(-1.0, 1.0, Harmonic()), 1000, seed=3, corrupt_omega=1e-3)
print("\ncorrupted omega0 ->", sum(not r.passed for r in bad), "of", len(bad), "checks fail")
