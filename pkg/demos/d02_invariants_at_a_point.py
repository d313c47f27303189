"""
Invariants of the curved superintegrable systems
================================================

Evaluate every constant of motion of the oscillator, the
Smorodinsky-Winternitz system and the TTW system at one phase point.
"""

from curvedttw.dynamics import SW, TTW_F, TTW_G, Harmonic, ModelParams, PhaseState
from curvedttw.invariants import k_exponents, report

state = PhaseState(r=0.7, phi=0.6, p_r=0.3, p_phi=0.5)

# isotropic oscillator on the sphere: angular momentum plus the Fradkin tensor
model = ModelParams(kappa=1.0, omega0=1.0, variant=Harmonic())
rep = report(model, state)
print("oscillator:", {k: round(float(v), 10) for k, v in rep.to_flat().items()})

# SW: three quadratic integrals, I1 + I2 + k I3 = 2H
model = ModelParams(kappa=-0.5, omega0=1.0, variant=SW(k2=0.1, k3=0.2))
rep = report(model, state)
I1, I2, I3 = (rep.extras[k] for k in ("I1", "I2", "I3"))
print(f"SW: I1={I1:.10f} I2={I2:.10f} I3={I3:.10f}  I1+I2+k I3-2H={I1 + I2 - 0.5 * I3 - 2 * rep.H:.2e}")

# TTW with rational index: K is a product of powers of two complex factors
for variant in (TTW_F("3/2", 1.0, 0.5), TTW_G(2, 0.3, 0.8)):
    model = ModelParams(kappa=0.37, omega0=1.0, variant=variant)
    rep = report(model, state)
    a, b = k_exponents(variant)
    print(f"{type(variant).__name__}(m={variant.m}): J2={rep.J2:.10f}  K = M^{a} conj(N)^{b} = {rep.K_m.to_complex():.6e}")

# G_m is F_2m in disguise: same integrals, different couplings
g = TTW_G(2, 0.3, 0.8)
f = g.as_ttw_f()
print(f"G as F: m={f.m} k_a={f.k_a:g} k_b={f.k_b:g}")
print("J2 via G:", report(ModelParams(0.37, 1.0, g), state).J2, " via F:", report(ModelParams(0.37, 1.0, f), state).J2)
