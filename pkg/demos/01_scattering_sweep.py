"""Scattering coefficients of a Gaussian along the real axis and the upper diagonal ray.

On the real axis |s11|^2 + |s21|^2 = 1; on the ray only s11 is meaningful.
"""

from __future__ import annotations

import cmath
import math

from dnls_scattering import AnalyticPotential, lambda_sweep, sample

q = sample(AnalyticPotential("gaussian", 0.5), -30.0, 30.0, 2048)
ray = cmath.exp(0.25j * math.pi)
points = [0.2, 0.5, 0.9, 1.3] + [r * ray for r in (0.4, 0.8, 1.6)]

print(f"{'lambda':>18} {'|s11|':>10} {'|s21|':>10} {'unitarity':>10}")
for d in lambda_sweep(q, points):
    lam = d.point.lam
    s21 = f"{abs(d.s21):10.6f}" if d.point.region == "real-axis" else f"{'-':>10}"
    print(f"{lam.real:8.4f}{lam.imag:+8.4f}j  {abs(d.s11):10.6f} {s21} {d.unitarity_defect:10.2e}")
