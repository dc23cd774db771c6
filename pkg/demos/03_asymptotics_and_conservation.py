"""Large-zeta behaviour of ln s11: b-term decay rates and the conserved quantities it encodes."""

from __future__ import annotations

import numpy as np

from dnls_scattering import AnalyticPotential, sample
from dnls_scattering.simplex import decay_profile
from dnls_scattering.spectral import asymptotic_fit, conserved

q = sample(AnalyticPotential("gaussian", 0.4, 1.0, 0.5), -30.0, 30.0, 2048)

H = conserved(q)
print(f"H0 = {H.H0:.10f}  H1 = {H.H1:.10f}  H2 = {H.H2:.10f}")

fit = asymptotic_fit(q, np.geomspace(20.0, 200.0, 12))
print(f"D1 fitted {fit.D1:.8f}  expected {fit.D1_expected:.8f}")
print(f"D2 fitted {fit.D2:.8f}  expected {fit.D2_expected:.8f}")

prof = decay_profile(q, np.geomspace(10.0, 200.0, 10), J=3)
for j in (2, 3):
    print(f"|b_{2 * j}| ~ |lambda|^{prof.slopes_lambda[j]:.2f}  (zeta^{prof.slopes_zeta[j]:.2f})")
