"""Partial sums of the Picard series and of the log series converging to the ODE value of s11."""

from __future__ import annotations

import cmath
import math

from dnls_scattering import AnalyticPotential, sample
from dnls_scattering.simplex import series_vs_ode

q = sample(AnalyticPotential("gaussian", 0.3), -30.0, 30.0, 2048)
lam = 0.8 * cmath.exp(0.25j * math.pi)
res = series_vs_ode(q, lam, J=4)

print(f"s11 from the Jost ODE: {res['s11_ode']:.12f}")
print(f"{'J':>2} {'|Picard - ODE|':>16} {'|exp(log) - ODE|':>18}")
for j, (dp, dl) in enumerate(zip(res["picard_defects"], res["log_defects"]), start=1):
    print(f"{j:2d} {dp:16.3e} {dl:18.3e}")
