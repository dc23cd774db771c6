"""Fourier-side formulas: the s2 multiplier, moments, the b4 trilinear form,
conserved quantities and large-lambda asymptotics along the ray lambda^2 = i zeta / 2.

Fourier transforms are unitary, qhat(xi) = (2 pi)^{-1/2} int q e^{-i x xi} dx, so that

    s2(lambda) = -i int lambda^2 / (2 lambda^2 + xi) |qhat|^2 dxi,
    c2(lambda) = s2 + (i/2)||q||^2 = (i/2) int xi / (2 lambda^2 + xi) |qhat|^2 dxi.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AliasingError, FitError, SingularityError
from .potential import GridPotential, fourier, l2_norm_sq, spectral_derivative
from .scattering import SpectralPoint, as_point, scattering_coefficients

ALIAS_TOL = 1e-10
MAX_MOMENT_K = 6
B4_MODES = 128
FIT_TOL = 1e-6


@dataclass(frozen=True)
class MomentTable:
    M: tuple[float, ...]

    def __getitem__(self, k: int) -> float:
        return self.M[k]

    def __len__(self) -> int:
        return len(self.M)


@dataclass(frozen=True)
class ConservedQuantities:
    H0: float
    H1: float
    H2: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.H0, self.H1, self.H2)


@dataclass(frozen=True, eq=False)
class AsymptoticFit:
    zeta: np.ndarray
    log_s11_bar: np.ndarray
    D: tuple[complex, ...]
    residual: float
    condition: float
    D1_expected: complex
    D2_expected: complex

    @property
    def D1(self) -> complex:
        return self.D[0]

    @property
    def D2(self) -> complex:
        return self.D[1]

    @property
    def D1_defect(self) -> float:
        return abs(self.D1 - self.D1_expected)

    @property
    def D2_defect(self) -> float:
        return abs(self.D2 - self.D2_expected)

    @property
    def D1_relative(self) -> float:
        return self.D1_defect / abs(self.D1_expected) if self.D1_expected else self.D1_defect

    @property
    def D2_relative(self) -> float:
        return self.D2_defect / abs(self.D2_expected) if self.D2_expected else self.D2_defect


def _alias_guard(q: GridPotential) -> None:
    power = np.abs(np.fft.fft(q.values)) ** 2
    total = power.sum()
    if total == 0:
        return
    freq = np.abs(np.fft.fftfreq(q.n))
    edge = power[freq >= 0.5 - 1.0 / 32].sum()
    if edge > ALIAS_TOL * total:
        raise AliasingError(f"spectral tail {edge / total:.2e} of total power at the Nyquist edge; refine the grid")


def _denominator(point: SpectralPoint, xi: np.ndarray, dxi: float) -> np.ndarray:
    den = 2 * point.lam_sq + xi
    if point.lam_sq.imag <= 0 and np.min(np.abs(den)) < dxi:
        raise SingularityError(
            f"2 lambda^2 + xi comes within {np.min(np.abs(den)):.2e} of zero on the frequency grid"
        )
    return den


def s2_fourier(q: GridPotential, point) -> complex:
    point = as_point(point)
    ft = fourier(q)
    den = _denominator(point, ft.xi, ft.dxi)
    return complex(-1j * ft.dxi * np.sum(point.lam_sq / den * ft.power()))


def c2(q: GridPotential, point) -> complex:
    return s2_fourier(q, point) + 0.5j * l2_norm_sq(q)


def re_c2_bound(q: GridPotential, point) -> tuple[float, float]:
    """(|Re c2|, int |xi| Im(lambda^2) / |2 lambda^2 + xi|^2 |qhat|^2 dxi)."""
    point = as_point(point)
    ft = fourier(q)
    lsq = point.lam_sq
    den = (2 * lsq.real + ft.xi) ** 2 + (2 * lsq.imag) ** 2
    bound = ft.dxi * np.sum(np.abs(ft.xi) * lsq.imag / den * ft.power())
    return abs(c2(q, point).real), float(bound)


def c2_tail_bound(q: GridPotential, point, N: int) -> tuple[float, float]:
    """Remainder of the N-term moment expansion of Re c2(lambda/sqrt 2) and its bound.

    Returns (|Re(c2(lambda/sqrt2) - (i/2) sum_{k<N} M_k lambda^{-2k-2})|,
    |lambda|^{-2N}/2 int |xi|^{N+1} (Im l^2 + |Re l^2 + xi|)/|l^2 + xi|^2 |qhat|^2 dxi).
    """
    point = as_point(point)
    lsq = point.lam_sq
    M = moments(q, max(N - 1, 0))
    series = 0.5j * sum(M[k] * lsq ** (-k - 1) for k in range(N))
    lhs = abs((c2(q, SpectralPoint(point.lam / math.sqrt(2))) - series).real)
    ft = fourier(q)
    den = (lsq.real + ft.xi) ** 2 + lsq.imag**2
    num = np.abs(ft.xi) ** (N + 1) * (lsq.imag + np.abs(lsq.real + ft.xi))
    rhs = 0.5 * abs(lsq) ** (-N) * ft.dxi * np.sum(num / den * ft.power())
    return float(lhs), float(rhs)


def moments(q: GridPotential, K: int) -> MomentTable:
    """M_k = (-1)^k int xi^{k+1} |qhat|^2 dxi for k = 0..K."""
    if not 0 <= K <= MAX_MOMENT_K:
        raise ValueError(f"K must be in 0..{MAX_MOMENT_K}")
    _alias_guard(q)
    ft = fourier(q)
    pw = ft.power()
    return MomentTable(tuple(float((-1) ** k * ft.dxi * np.sum(ft.xi ** (k + 1) * pw)) for k in range(K + 1)))


def moments_from_derivatives(q: GridPotential, K: int) -> MomentTable:
    """The same moments in physical space.

    k = 2m:     M_k = +Im int q^{(m+1)} conj(q^{(m)}) dx
    k = 2m - 1: M_k = -int |q^{(m)}|^2 dx
    """
    if not 0 <= K <= MAX_MOMENT_K:
        raise ValueError(f"K must be in 0..{MAX_MOMENT_K}")
    _alias_guard(q)
    d = [q.values] + [spectral_derivative(q, m, q.dx) for m in range(1, K // 2 + 2)]
    out = []
    for k in range(K + 1):
        if k % 2 == 0:
            m = k // 2
            out.append(float(np.imag(q.dx * np.sum(d[m + 1] * np.conj(d[m])))))
        else:
            m = (k + 1) // 2
            out.append(float(-q.dx * np.sum(np.abs(d[m]) ** 2)))
    return MomentTable(tuple(out))


def b4_fourier(q: GridPotential, point, modes: int = B4_MODES, stride: int = 1,
               real_part: bool = False) -> complex:
    """Triple frequency sum for b4 over xi1 + xi2 = eta1 + eta2:

        (i / 2 pi) int lambda^4 qhat(eta1) qhat(eta2) qhat*(xi1) qhat*(xi2)
                   / ((2 lambda^2 + xi1)(2 lambda^2 + eta1)(2 lambda^2 + eta2)).

    The outer variables run over the ``modes`` central frequencies (every
    ``stride``-th one); xi2 is read off the full spectrum by index arithmetic,
    so no interpolation is needed.  ``real_part`` replaces the quartic product
    by its real part.  This leaves the sum unchanged: symmetrised in xi1 <-> xi2
    the kernel is (c + d) / (2abcd), even under swapping the (xi) and (eta) pairs,
    while the imaginary part of the product is odd under that swap.
    """
    point = as_point(point)
    if point.lam_sq.imag <= 0:
        raise SingularityError("the trilinear form needs Im(lambda^2) > 0")
    ft = fourier(q)
    n = ft.xi.size
    if not np.any(ft.qhat):
        return 0j
    center = n // 2
    half = (modes * stride) // 2
    idx = np.arange(center - half, center + half, stride)
    idx = idx[(idx >= 0) & (idx < n)]
    dxi = ft.dxi * stride
    lsq = point.lam_sq
    qh = ft.qhat
    inv = 1.0 / (2 * lsq + ft.xi[idx])
    den_pair = inv[:, None] * inv[None, :]
    q_pair = qh[idx][:, None] * qh[idx][None, :]
    i_sum = idx[:, None] + idx[None, :]
    total = 0j
    for k1 in idx:
        k2 = i_sum - k1
        ok = (k2 >= 0) & (k2 < n)
        conj2 = np.where(ok, np.conj(qh[np.clip(k2, 0, n - 1)]), 0)
        quartic = q_pair * np.conj(qh[k1]) * conj2
        if real_part:
            quartic = quartic.real
        total += np.sum(den_pair * quartic) / (2 * lsq + ft.xi[k1])
    return complex(1j / (2 * math.pi) * lsq**2 * total * dxi**3)


def h_coefficients_b4(q: GridPotential, j_max: int = 3) -> list[complex]:
    """H_j4 = -i^j sum_{a1+a2+a3=j-2} (-1)^{a1} int q^(a2) q^(a3) conj(q^(a1) q) dx, j = 2..j_max.

    The large-lambda expansion of b4 reads i sum_j H_j4 lambda^{2-2j} / 2^{j+1}.
    H_24 = int |q|^4 and H_34 = -3 Im int |q|^2 q' q*; both are real.
    """
    if not 2 <= j_max <= 3:
        raise ValueError("j_max must be 2 or 3")
    _alias_guard(q)
    d = [q.values] + [spectral_derivative(q, m, q.dx) for m in range(1, j_max - 1)]
    out = []
    for j in range(2, j_max + 1):
        acc = 0j
        for a1 in range(j - 1):
            for a2 in range(j - 1 - a1):
                a3 = j - 2 - a1 - a2
                acc += (-1) ** a1 * q.dx * np.sum(d[a2] * d[a3] * np.conj(d[a1] * q.values))
        out.append(complex(-(1j**j) * acc))
    return out


def b4_asymptotic(q: GridPotential, point, j_max: int = 3) -> complex:
    lsq = as_point(point).lam_sq
    H = h_coefficients_b4(q, j_max)
    return sum(1j * h * lsq ** (1 - j) / 2 ** (j + 1) for j, h in enumerate(H, start=2))


def conserved(q: GridPotential) -> ConservedQuantities:
    """H0 = int |q|^2,  H1 = Im int q* q_x + (1/2) int |q|^4,
    H2 = int |q_x|^2 - (3/2) Im int |q|^2 q q_x* + (1/2) int |q|^6."""
    _alias_guard(q)
    v = q.values
    qx = spectral_derivative(q, 1, q.dx)
    a2 = np.abs(v) ** 2
    h0 = q.dx * np.sum(a2)
    h1 = np.imag(q.dx * np.sum(np.conj(v) * qx)) + 0.5 * q.dx * np.sum(a2**2)
    h2 = (q.dx * np.sum(np.abs(qx) ** 2) - 1.5 * np.imag(q.dx * np.sum(a2 * v * np.conj(qx)))
          + 0.5 * q.dx * np.sum(a2**3))
    return ConservedQuantities(float(h0), float(h1), float(h2))


def log_s11_bar(q: GridPotential, zeta: float, ode_tol: float = 1e-12) -> complex:
    """(i/2)||q||^2 + ln s11 at the ray point with lambda^2 = i zeta / 2."""
    s11 = scattering_coefficients(q, SpectralPoint.on_ray(zeta), ode_tol).s11
    return 0.5j * l2_norm_sq(q) + cmath.log(s11)


def asymptotic_fit(q: GridPotential, zeta_samples: Sequence[float], n_terms: int = 3,
                   ode_tol: float = 1e-12, max_condition: float = 1e10) -> AsymptoticFit:
    """Least-squares fit of ln s11_bar = sum_k D_k mu^{-k}, mu = lambda^2 = i zeta / 2.

    The last power is a nuisance term absorbing higher orders; D1 and D2 are
    compared against (i/4) H1 and -(i/8) H2.
    """
    z = np.asarray(zeta_samples, dtype=float)
    if z.size < n_terms + 1:
        raise FitError(f"need more than {n_terms} ray samples, got {z.size}")
    H = conserved(q)
    expected = (0.25j * H.H1, -0.125j * H.H2)
    if not np.any(q.values):
        return AsymptoticFit(z, np.zeros(z.size, complex), (0j,) * n_terms, 0.0, 1.0, *expected)
    mu = 0.5j * z
    L = np.array([log_s11_bar(q, float(zz), ode_tol) for zz in z])
    # columns scaled to unit size so the condition number reflects the sampling, not the units
    scale = np.abs(mu).min()
    A = np.stack([(scale / mu) ** k for k in range(1, n_terms + 1)], axis=1)
    cond = float(np.linalg.cond(A))
    if cond > max_condition:
        raise FitError(f"ill-conditioned asymptotic fit: condition number {cond:.3e}")
    coef, *_ = np.linalg.lstsq(A, L, rcond=None)
    D = tuple(complex(c * scale**k) for k, c in enumerate(coef, start=1))
    resid = float(np.max(np.abs(A @ coef - L)))
    return AsymptoticFit(z, L, D, resid, cond, *expected)


@dataclass(frozen=True, eq=False)
class LimitTable:
    zeta: np.ndarray
    defect: np.ndarray
    slope: float


def limit_check(q: GridPotential, zeta_samples: Sequence[float], ode_tol: float = 1e-12) -> LimitTable:
    """|ln s11 + (i/2)||q||^2| along the ray and its log-log slope against zeta."""
    z = np.asarray(zeta_samples, dtype=float)
    if np.any(np.diff(z) <= 0):
        raise ValueError("zeta samples must be strictly ascending")
    if not np.any(q.values):
        return LimitTable(z, np.zeros(z.size), math.nan)
    d = np.array([abs(log_s11_bar(q, float(zz), ode_tol)) for zz in z])
    slope = float(np.polyfit(np.log(z), np.log(d), 1)[0]) if z.size >= 2 and np.all(d > 0) else math.nan
    return LimitTable(z, d, slope)
