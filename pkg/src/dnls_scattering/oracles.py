"""Slow, independent reference computations used to cross-check the fast routes.

These work from closed-form potentials with plain textbook rules (fixed-step
RK4, composite Simpson, cumulative trapezoid with Richardson extrapolation) and
keep the explicit oscillatory factors, so they share no code path with the
production integrators.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import cumulative_simpson, cumulative_trapezoid, simpson

from .potential import AnalyticPotential


def rk4_jost(q: AnalyticPotential, lam: complex, a: float, b: float, n: int) -> tuple[complex, complex]:
    """(s11, s21) from fixed-step RK4 on the untransformed Jost system for psi."""
    lam = complex(lam)
    lsq = lam * lam
    h = (b - a) / n

    def rhs(x, y):
        qx = complex(q(np.array([x]))[0])
        return np.array([-1j * lsq * y[0] + lam * qx * y[1], -lam * np.conj(qx) * y[0] + 1j * lsq * y[1]])

    y = np.array([np.exp(-1j * lsq * a), 0j])
    x = a
    for _ in range(n):
        k1 = rhs(x, y)
        k2 = rhs(x + h / 2, y + h / 2 * k1)
        k3 = rhs(x + h / 2, y + h / 2 * k2)
        k4 = rhs(x + h, y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        x += h
    return complex(y[0] * np.exp(1j * lsq * b)), complex(y[1] * np.exp(-1j * lsq * b))


def _letters(word: str, q: AnalyticPotential, lam: complex, t: np.ndarray) -> list[np.ndarray]:
    lsq = lam * lam
    qv = q(t)
    fx = lam * np.conj(qv) * np.exp(-2j * lsq * t)
    fy = lam * qv * np.exp(2j * lsq * t)
    return [fx if c == "X" else fy for c in word]


def nested_simpson(word: str, q: AnalyticPotential, lam: complex, a: float, b: float, n: int) -> complex:
    """Ordered integral by nested cumulative Simpson sums on n+1 nodes (n even)."""
    lam = complex(lam)
    t = np.linspace(a, b, n + 1)
    acc = np.ones_like(t, dtype=complex)
    fs = _letters(word, q, lam, t)
    for f in fs[:-1]:
        g = f * acc
        acc = cumulative_simpson(g.real, x=t, initial=0) + 1j * cumulative_simpson(g.imag, x=t, initial=0)
    g = fs[-1] * acc
    return complex(simpson(g.real, x=t) + 1j * simpson(g.imag, x=t))


def nested_trapezoid(word: str, q: AnalyticPotential, lam: complex, a: float, b: float, n: int) -> complex:
    lam = complex(lam)
    t = np.linspace(a, b, n + 1)
    acc = np.ones_like(t, dtype=complex)
    for f in _letters(word, q, lam, t):
        acc = cumulative_trapezoid(f * acc, x=t, initial=0)
    return complex(acc[-1])


def richardson_trapezoid(word: str, q: AnalyticPotential, lam: complex, a: float, b: float,
                         n: int, levels: int = 3) -> tuple[complex, float]:
    """Trapezoid values on n, 2n, 4n, ... nodes extrapolated in h^2; returns (value, last correction)."""
    table = [nested_trapezoid(word, q, lam, a, b, n * 2**k) for k in range(levels)]
    correction = 0.0
    for order in range(1, levels):
        f = 4.0**order
        new = [(f * table[i + 1] - table[i]) / (f - 1) for i in range(len(table) - 1)]
        correction = abs(new[-1] - table[-1])
        table = new
    return table[-1], correction
