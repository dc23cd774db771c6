"""V^p norms of step functions: exhaustive search, the dynamic-programming value, and a convolution bound."""

from __future__ import annotations

import numpy as np

from dnls_scattering import variation as V

f = V.from_points([0.0, 1.0, 2.0, 3.0, 4.0], [1.0, 0.5, 1.0, 0.0])
for p in (1.2, 1.5, 2.0, 4.0):
    print(f"p={p:3.1f}  exhaustive {V.vp_norm(f, p):.6f}  dp {V.vp_norm_lower_bound(f, p):.6f}")

atom = V.from_points([0.0, 1.0, 2.0], [1.0, -1.0])
print(f"atom ratio at p=2 for a +1/-1 pair: {V.atom_ratio(atom, 2.0):.6f}")

rng = np.random.default_rng(3)
g = V.random_kernel(rng, 3)
h = V.random_step_function(rng, 4)
rep = V.convolution_bound_check(g, h, 2.0)
print(f"||g*f||_V2 = {rep.lhs:.6f} <= ||g||_1 ||f||_V2 = {rep.rhs:.6f}: {not rep.violated}")
