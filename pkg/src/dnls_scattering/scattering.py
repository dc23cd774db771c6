"""Direct scattering for the x-part of the DNLS Lax pair.

The spectral problem psi_x = U psi with U = -i sigma_3 (lambda^2 + i lambda Q) reads

    psi_1' = -i lambda^2 psi_1 + lambda q psi_2,
    psi_2' = -lambda q* psi_1 + i lambda^2 psi_2.

The Jost column normalised to (e^{-i lambda^2 x}, 0) at x -> -infinity has
(s11 e^{-i lambda^2 x}, s21 e^{i lambda^2 x}) at x -> +infinity.  With the
renormalised components m1 = psi_1 e^{i lambda^2 x}, m2 = psi_2 e^{-i lambda^2 x},
s11 = m1(+inf) and s21 = m2(+inf).

Internally the integrator carries (u, v) = (m1, m2 e^{2 i lambda^2 x}), which obeys

    u' = lambda q v,    v' = 2 i lambda^2 v - lambda q* u,

so no factor e^{+-2 i lambda^2 x} is ever formed explicitly.  For Im(lambda^2) > 0
these factors over/underflow on wide grids while the (u, v) system stays bounded.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import make_interp_spline

from .errors import DNLSError, RegionError, ResolutionError
from .potential import GridPotential

ODE_TOL = 1e-10
AXIS_TOL = 1e-14
# samples below this fraction of max|q| are treated as outside the support
SUPPORT_TOL = 1e-17
Region = Literal["upper", "lower", "real-axis"]
Method = Literal["ode", "series", "fourier"]


@dataclass(frozen=True)
class SpectralPoint:
    lam: complex

    def __post_init__(self):
        object.__setattr__(self, "lam", complex(self.lam))

    @classmethod
    def on_ray(cls, zeta: float) -> "SpectralPoint":
        """lambda = e^{i pi/4} sqrt(zeta/2), so that lambda^2 = i zeta / 2."""
        return cls(cmath.exp(0.25j * math.pi) * math.sqrt(zeta / 2.0))

    @property
    def lam_sq(self) -> complex:
        return self.lam * self.lam

    @property
    def region(self) -> Region:
        im = self.lam_sq.imag
        if abs(im) <= AXIS_TOL * max(1.0, abs(self.lam_sq)):
            return "real-axis"
        return "upper" if im > 0 else "lower"

    @property
    def is_real(self) -> bool:
        return self.lam.imag == 0.0

    @property
    def is_imaginary(self) -> bool:
        return self.lam.real == 0.0 and self.lam.imag != 0.0

    def __neg__(self) -> "SpectralPoint":
        return SpectralPoint(-self.lam)


def as_point(p) -> SpectralPoint:
    return p if isinstance(p, SpectralPoint) else SpectralPoint(p)


@dataclass(frozen=True)
class ScatteringDatum:
    point: SpectralPoint
    s11: complex
    s21: complex
    method: Method = "ode"
    est_error: float = 0.0

    @property
    def unitarity_defect(self) -> float:
        """| |s11|^2 +- |s21|^2 - 1 | on the real / imaginary lambda axis, nan elsewhere."""
        if not (self.point.is_real or self.point.is_imaginary):
            return math.nan
        a, b = abs(self.s11) ** 2, abs(self.s21) ** 2
        return abs(a + b - 1.0) if self.point.is_real else abs(a - b - 1.0)


@dataclass(frozen=True, eq=False)
class JostTrajectory:
    x: np.ndarray
    m1: np.ndarray
    m2: np.ndarray
    point: SpectralPoint
    est_error: float
    nfev: int


def _check_region(point: SpectralPoint) -> None:
    if point.region == "lower":
        raise RegionError(
            f"Im(lambda^2) = {point.lam_sq.imag:.3e} < 0: the first Jost column is unbounded there; "
            "use the symmetry s22(lambda) = conj(s11(conj(lambda)))"
        )


def _support(values: np.ndarray) -> tuple[int, int] | None:
    mag = np.abs(values)
    nz = np.flatnonzero(mag > SUPPORT_TOL * mag.max()) if mag.max() > 0 else np.array([], int)
    if nz.size == 0:
        return None
    return int(nz[0]), int(nz[-1])


def _m2_from_v(v: np.ndarray, lam_sq: complex, x: np.ndarray) -> np.ndarray:
    # m2 = v exp(-2 i lam^2 x), formed in log space so huge/tiny factors cancel
    v = np.asarray(v, dtype=complex)
    out = np.zeros_like(v)
    nz = v != 0
    with np.errstate(over="ignore", under="ignore"):
        out[nz] = np.exp(np.log(v[nz]) - 2j * lam_sq * np.asarray(x)[nz])
    return out


def jost_solve(q: GridPotential, point, ode_tol: float = ODE_TOL, nodes: bool = True,
               max_step: float | None = None) -> JostTrajectory:
    """Integrate the renormalised Jost column from x_min to x_max.

    Adaptive 8(5,3) Dormand-Prince stepping with rtol = atol = ode_tol; q between
    grid nodes comes from a degree-7 interpolating spline.  The trajectory is
    reported at the grid nodes (``nodes=True``) or only at the two ends.
    """
    point = as_point(point)
    _check_region(point)
    lam, lam_sq = point.lam, point.lam_sq
    x = q.x
    support = _support(q.values)
    if support is None or lam == 0:
        xs = x if nodes else x[[0, -1]]
        return JostTrajectory(xs, np.ones(xs.size, complex), np.zeros(xs.size, complex), point, 0.0, 0)

    pad = 8
    i0, i1 = max(support[0] - pad, 0), min(support[1] + pad, q.n - 1)
    a, b = float(x[i0]), float(x[i1])
    spline = make_interp_spline(x, q.values, k=7)
    two_i_lsq = 2j * lam_sq

    def rhs(t, y):
        qt = complex(spline(t))
        return [lam * qt * y[1], two_i_lsq * y[1] - lam * qt.conjugate() * y[0]]

    t_eval = x[i0:i1 + 1] if nodes else None
    sol = solve_ivp(rhs, (a, b), [1.0 + 0j, 0j], method="DOP853", rtol=ode_tol, atol=ode_tol,
                    t_eval=t_eval, max_step=max_step if max_step is not None else 40 * q.dx)
    if sol.status != 0:
        raise ResolutionError(f"Jost integration failed at lambda={lam:.6g}: {sol.message}; "
                              "refine the grid or loosen ode_tol")
    u_end, v_end = sol.y[0, -1], sol.y[1, -1]
    m2_end = _m2_from_v(np.array([v_end]), lam_sq, np.array([b]))[0]
    n_steps = max(sol.nfev // 12, 1)
    est = ode_tol * n_steps * max(1.0, float(np.max(np.abs(sol.y[0]))))

    if nodes:
        m1 = np.ones(q.n, complex)
        m2 = np.zeros(q.n, complex)
        m1[i0:i1 + 1] = sol.y[0]
        m2[i0:i1 + 1] = _m2_from_v(sol.y[1], lam_sq, x[i0:i1 + 1])
        m1[i1 + 1:] = u_end
        m2[i1 + 1:] = m2_end
        return JostTrajectory(x, m1, m2, point, est, sol.nfev)
    xs = x[[0, -1]]
    return JostTrajectory(xs, np.array([1.0 + 0j, u_end]), np.array([0j, m2_end]), point, est, sol.nfev)


def scattering_coefficients(q: GridPotential, point, ode_tol: float = ODE_TOL) -> ScatteringDatum:
    traj = jost_solve(q, point, ode_tol=ode_tol, nodes=False)
    return ScatteringDatum(traj.point, complex(traj.m1[-1]), complex(traj.m2[-1]), "ode", traj.est_error)


@dataclass(frozen=True)
class SymmetryReport:
    point: SpectralPoint
    s11_deviation: float
    s21_deviation: float


def symmetry_check(q: GridPotential, point, ode_tol: float = ODE_TOL) -> SymmetryReport:
    """Deviations from s11(lambda) = s11(-lambda) and s21(lambda) = -s21(-lambda)."""
    point = as_point(point)
    plus = scattering_coefficients(q, point, ode_tol)
    minus = scattering_coefficients(q, -point, ode_tol)
    return SymmetryReport(point, abs(plus.s11 - minus.s11), abs(plus.s21 + minus.s21))


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("DNLS_THREADS", "1")))
    except ValueError:
        return 1


def lambda_sweep(q: GridPotential, points: Sequence, ode_tol: float = ODE_TOL,
                 workers: int | None = None) -> list[ScatteringDatum | DNLSError]:
    """Per-point scattering data in input order; failed points yield their exception."""
    pts = [as_point(p) for p in points]

    def one(p: SpectralPoint):
        try:
            return scattering_coefficients(q, p, ode_tol)
        except DNLSError as exc:
            return exc

    workers = workers or _default_workers()
    if workers == 1 or len(pts) < 2:
        return [one(p) for p in pts]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, pts))
