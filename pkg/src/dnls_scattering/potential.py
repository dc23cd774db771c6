"""Potentials q(x): analytic test families, uniform-grid samples and their norms.

Grids are uniform with nodes x_k = x_min + k*dx, k = 0..n-1, dx = (x_max - x_min)/n,
i.e. the periodic-box convention, so that the FFT and the trapezoid rule agree.
The Fourier transform is the unitary one,

    qhat(xi) = (2*pi)^{-1/2} * int q(x) exp(-i x xi) dx,

approximated by the DFT with weight dx / sqrt(2*pi).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Literal

import numpy as np

from .errors import DomainError

BOUNDARY_DECAY_TOL = 1e-12
DEFAULT_X_MIN, DEFAULT_X_MAX, DEFAULT_N = -30.0, 30.0, 2048

Family = Literal["gaussian", "sech", "custom"]


@dataclass(frozen=True)
class AnalyticPotential:
    """Closed-form potential.

    gaussian: A * exp(-x^2/w^2) * exp(i c x);  sech: A * sech(x/w) * exp(i c x).
    ``custom`` takes a vectorised callable in ``func``.
    """

    family: Family = "gaussian"
    amplitude: complex = 1.0
    width: float = 1.0
    chirp: float = 0.0
    func: Callable[[np.ndarray], np.ndarray] | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError("width must be positive")
        if self.family not in ("gaussian", "sech", "custom"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "custom" and self.func is None:
            raise ValueError("custom family needs func")

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        phase = np.exp(1j * self.chirp * x)
        if self.family == "gaussian":
            env = np.exp(-((x / self.width) ** 2))
        elif self.family == "sech":
            # sech(u) = 2 e^{-|u|} / (1 + e^{-2|u|}) avoids cosh overflow
            u = np.abs(x / self.width)
            env = 2.0 * np.exp(-u) / (1.0 + np.exp(-2.0 * u))
        else:
            return np.asarray(self.func(x), dtype=complex)
        return complex(self.amplitude) * env * phase

    def derivative(self, x, order: int = 1) -> np.ndarray:
        """Closed-form derivatives for the gaussian family (used as test oracle)."""
        if self.family != "gaussian" or order not in (0, 1, 2):
            raise NotImplementedError("closed-form derivative only for gaussian, order <= 2")
        x = np.asarray(x, dtype=float)
        w2 = self.width**2
        base = self(x)
        g1 = -2 * x / w2 + 1j * self.chirp
        if order == 0:
            return base
        if order == 1:
            return g1 * base
        return (g1**2 - 2 / w2) * base


@dataclass(frozen=True, eq=False)
class GridPotential:
    """Complex samples of q on a uniform grid, decayed at both ends."""

    x_min: float
    x_max: float
    values: np.ndarray
    boundary_decay_tol: float = BOUNDARY_DECAY_TOL

    def __post_init__(self):
        vals = np.array(self.values, dtype=complex)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        if vals.ndim != 1 or vals.size < 16:
            raise ValueError("need a 1-d grid with at least 16 samples")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")
        edge = max(abs(vals[0]), abs(vals[-1]))
        if edge > self.boundary_decay_tol:
            side = "left" if abs(vals[0]) >= abs(vals[-1]) else "right"
            raise DomainError(
                f"potential not decayed at the {side} boundary: |q| = {edge:.3e} "
                f"> {self.boundary_decay_tol:.1e}; widen [x_min, x_max]"
            )

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.n)

    @property
    def length(self) -> float:
        return self.x_max - self.x_min

    def with_values(self, values: np.ndarray) -> "GridPotential":
        return GridPotential(self.x_min, self.x_max, values, self.boundary_decay_tol)

    def scaled(self, factor: complex) -> "GridPotential":
        return self.with_values(self.values * factor)

    def conj(self) -> "GridPotential":
        return self.with_values(np.conj(self.values))

    def __repr__(self) -> str:
        return f"GridPotential([{self.x_min}, {self.x_max}], n={self.n}, max|q|={np.abs(self.values).max():.3g})"


@dataclass(frozen=True, eq=False)
class SpectrumSamples:
    """Samples of the unitary transform qhat on the centred frequency grid."""

    xi: np.ndarray
    qhat: np.ndarray

    @property
    def dxi(self) -> float:
        return float(self.xi[1] - self.xi[0])

    def power(self) -> np.ndarray:
        return np.abs(self.qhat) ** 2


def sample(analytic: AnalyticPotential, x_min: float = DEFAULT_X_MIN, x_max: float = DEFAULT_X_MAX,
           n: int = DEFAULT_N, boundary_decay_tol: float = BOUNDARY_DECAY_TOL) -> GridPotential:
    dx = (x_max - x_min) / n
    x = x_min + dx * np.arange(n)
    return GridPotential(x_min, x_max, analytic(x), boundary_decay_tol)


def zero_potential(x_min: float = DEFAULT_X_MIN, x_max: float = DEFAULT_X_MAX, n: int = DEFAULT_N) -> GridPotential:
    return GridPotential(x_min, x_max, np.zeros(n, dtype=complex))


def frequencies(q: GridPotential) -> np.ndarray:
    """Centred angular frequencies 2*pi*k/(n*dx)."""
    return np.fft.fftshift(np.fft.fftfreq(q.n, d=q.dx)) * 2 * np.pi


def fourier(q: GridPotential) -> SpectrumSamples:
    xi = frequencies(q)
    raw = np.fft.fftshift(np.fft.fft(q.values))
    qhat = raw * (q.dx / math.sqrt(2 * math.pi)) * np.exp(-1j * xi * q.x_min)
    return SpectrumSamples(xi, qhat)


def inverse_fourier(ft: SpectrumSamples, like: GridPotential) -> GridPotential:
    """Inverse of :func:`fourier` onto the grid of ``like``."""
    raw = ft.qhat * np.exp(1j * ft.xi * like.x_min) * (math.sqrt(2 * math.pi) / like.dx)
    return like.with_values(np.fft.ifft(np.fft.ifftshift(raw)))


def spectral_derivative(q: GridPotential | np.ndarray, order: int = 1, dx: float | None = None) -> np.ndarray:
    """d^order q / dx^order by FFT; accepts a GridPotential or raw samples plus dx."""
    if isinstance(q, GridPotential):
        values, dx = q.values, q.dx
    else:
        values = np.asarray(q, dtype=complex)
    if order == 0:
        return np.array(values, dtype=complex)
    k = np.fft.fftfreq(values.size, d=dx) * 2 * np.pi
    mult = (1j * k) ** order
    if values.size % 2 == 0 and order % 2 == 1:
        mult[values.size // 2] = 0.0  # Nyquist mode has no consistent odd derivative
    return np.fft.ifft(mult * np.fft.fft(values))


def l2_norm_sq(q: GridPotential) -> float:
    return float(q.dx * np.sum(np.abs(q.values) ** 2))


def hs_norm(q: GridPotential, s: float) -> float:
    if s < 0:
        raise ValueError("s must be >= 0")
    ft = fourier(q)
    return float(math.sqrt(ft.dxi * np.sum((1 + ft.xi**2) ** s * ft.power())))


def refine(q: GridPotential, factor: int) -> GridPotential:
    """Band-limited (zero-padded FFT) upsampling by an integer factor."""
    if factor < 1 or int(factor) != factor:
        raise ValueError("factor must be a positive integer")
    if factor == 1:
        return q
    n, m = q.n, q.n * factor
    coeffs = np.fft.fftshift(np.fft.fft(q.values))
    padded = np.zeros(m, dtype=complex)
    start = (m - n) // 2
    padded[start:start + n] = coeffs
    if n % 2 == 0:
        # split the Nyquist coefficient symmetrically between +/- n/2
        padded[start] *= 0.5
        padded[start + n] = padded[start]
    values = np.fft.ifft(np.fft.ifftshift(padded)) * factor
    return GridPotential(q.x_min, q.x_max, values, q.boundary_decay_tol)


def interpolate(q: GridPotential, points) -> np.ndarray:
    """Trigonometric (band-limited) interpolant of the samples at arbitrary points.

    Points outside [x_min, x_max) are treated as lying beyond the support (value 0).
    """
    pts = np.atleast_1d(np.asarray(points, dtype=float))
    coeffs = np.fft.fft(q.values) / q.n
    k = np.fft.fftfreq(q.n, d=1.0 / q.n)
    if q.n % 2 == 0:
        k = k.copy()
        nyq = q.n // 2
        k[nyq] = 0.0  # Nyquist: use cos, split below
        nyq_coeff = coeffs[nyq]
        coeffs = coeffs.copy()
        coeffs[nyq] = 0.0
    u = 2 * np.pi * (pts - q.x_min) / q.length
    out = np.exp(1j * np.outer(u, k)) @ coeffs
    if q.n % 2 == 0:
        out = out + nyq_coeff * np.cos(q.n / 2 * u)
    inside = (pts >= q.x_min) & (pts < q.x_max)
    return np.where(inside, out, 0.0)


def rescale(q: GridPotential, z: float, keep_grid: bool = False) -> GridPotential:
    """Samples of z^{1/2} q(z x).

    By default the grid is scaled with the function ([x_min/z, x_max/z], same n),
    which is exact.  With ``keep_grid`` the result is resampled on the original
    grid through the band-limited interpolant.
    """
    if not z > 0:
        raise ValueError("z must be positive")
    if not keep_grid:
        return GridPotential(q.x_min / z, q.x_max / z, math.sqrt(z) * q.values, q.boundary_decay_tol)
    values = math.sqrt(z) * interpolate(q, z * q.x)
    try:
        return q.with_values(values)
    except DomainError as exc:
        raise DomainError(f"rescaled support overflows the grid: {exc}") from None


# ---------------------------------------------------------------- file formats

CONFIG_KEYS = ("family", "amplitude_re", "amplitude_im", "width", "chirp", "x_min", "x_max", "n")


def from_config(cfg: dict) -> GridPotential:
    """Build a grid potential from the key-value potential description."""
    unknown = set(cfg) - set(CONFIG_KEYS)
    if unknown:
        raise ValueError(f"unknown potential keys: {sorted(unknown)}")
    analytic = AnalyticPotential(
        family=cfg.get("family", "gaussian"),
        amplitude=complex(float(cfg.get("amplitude_re", 1.0)), float(cfg.get("amplitude_im", 0.0))),
        width=float(cfg.get("width", 1.0)),
        chirp=float(cfg.get("chirp", 0.0)),
    )
    return sample(analytic, float(cfg.get("x_min", DEFAULT_X_MIN)), float(cfg.get("x_max", DEFAULT_X_MAX)),
                  int(cfg.get("n", DEFAULT_N)))


def load_config(path: str | Path) -> dict:
    """Read a potential description (YAML or JSON; JSON is valid YAML)."""
    import yaml

    with open(path) as fh:
        data = yaml.safe_load(fh) or {}
    return dict(data.get("potential", data))


def to_csv(q: GridPotential) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "re_q", "im_q"])
    for xv, qv in zip(q.x, q.values):
        writer.writerow([repr(float(xv)), repr(float(qv.real)), repr(float(qv.imag))])
    return buf.getvalue()


def from_csv(text: str, boundary_decay_tol: float = BOUNDARY_DECAY_TOL) -> GridPotential:
    rows = list(csv.DictReader(io.StringIO(text)))
    x = np.array([float(r["x"]) for r in rows])
    values = np.array([complex(float(r["re_q"]), float(r["im_q"])) for r in rows])
    dx = (x[-1] - x[0]) / (x.size - 1)
    return GridPotential(float(x[0]), float(x[0] + dx * x.size), values, boundary_decay_tol)
