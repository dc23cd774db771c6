"""Iterated ordered integrals over simplices: word integrals, Picard and log terms.

A word w = w_1...w_2j over {X, Y} stands for

    T_w(lambda) = lambda^{2j} int_{t_1<...<t_2j} prod_k f_k(t_k) dt,
    f_X(t) = q*(t) e^{-2 i lambda^2 t},   f_Y(t) = q(t) e^{+2 i lambda^2 t}.

Evaluation is letter by letter.  With prefix heights d_k = #X - #Y of w_1..w_k,
the renormalised partial integrals G_k(t) = F_k(t) e^{2 i lambda^2 d_k t} satisfy

    G_k(t) = int^t e^{2 i lambda^2 d_k (t - s)} lambda g_k(s) G_{k-1}(s) ds,   g_X = q*, g_Y = q,

so for an admissible word and Im(lambda^2) >= 0 every kernel has modulus <= 1.
Each cell step is exact for the exponential and uses a local degree-7 polynomial
for the rest; the cell recurrence is a first-order linear filter.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from scipy.signal import lfilter

from . import words as W
from .errors import ResolutionError
from .potential import GridPotential, refine
from .scattering import SpectralPoint, as_point, scattering_coefficients, _check_region

PHASE_GUARD = 0.3
MAX_PICARD_J = 6
MAX_LOG_J = 5
STENCIL = 8
LOW_STENCIL = 6


@dataclass(frozen=True)
class WordIntegralValue:
    word: str
    point: SpectralPoint
    value: complex
    quad_error: float


@dataclass(frozen=True)
class ExpansionTerms:
    point: SpectralPoint
    s_terms: tuple[complex, ...]
    b_terms: tuple[complex, ...] = ()
    partial_sums: tuple[complex, ...] = ()
    quad_errors: tuple[float, ...] = ()
    identity_defects: tuple[float, ...] = ()

    @property
    def J(self) -> int:
        return len(self.s_terms)

    def log_partial_sums(self) -> tuple[complex, ...]:
        return tuple(np.cumsum(self.b_terms).tolist()) if self.b_terms else ()


@lru_cache(maxsize=256)
def _cell_weights(zh: complex, p: int) -> np.ndarray:
    """W[r, m] = int_0^1 e^{zh(1-u)} l_m(u) du for the cell [n, n+1] and stencil n-r .. n-r+p-1.

    ``l_m`` is the Lagrange basis on the stencil nodes (in cell units).
    """
    u, gw = np.polynomial.legendre.leggauss(24)
    u = 0.5 * (u + 1.0)
    gw = 0.5 * gw
    kern = np.exp(zh * (1.0 - u)) * gw
    out = np.empty((p, p), dtype=complex)
    for r in range(p):
        nodes = np.arange(p) - r
        for m in range(p):
            others = np.delete(nodes, m)
            lag = np.prod((u[:, None] - others) / (nodes[m] - others), axis=1)
            out[r, m] = np.sum(kern * lag)
    out.setflags(write=False)
    return out


def _volterra_step(g: np.ndarray, zh: complex, h: float, p: int) -> np.ndarray:
    """Y_n = int_{t_0}^{t_n} e^{z(t_n - s)} g(s) ds on the grid (Y_0 = 0)."""
    n = g.size
    wts = _cell_weights(complex(zh), p) * h
    cells = np.arange(n - 1)
    start = np.clip(cells - (p // 2 - 1), 0, n - p)
    r = cells - start
    idx = start[:, None] + np.arange(p)[None, :]
    b = np.einsum("cm,cm->c", wts[r], g[idx])
    y = np.zeros(n, dtype=complex)
    y[1:] = lfilter([1.0], [1.0, -cmath.exp(zh)], b)
    return y


class WordEvaluator:
    """Evaluates many words at one (q, lambda), reusing shared prefixes."""

    def __init__(self, q: GridPotential, point, p: int = STENCIL):
        self.q = q
        self.point = as_point(point)
        _check_region(self.point)
        lam_sq = self.point.lam_sq
        if abs(lam_sq) * q.dx > PHASE_GUARD:
            raise ResolutionError(
                f"|lambda^2| dx = {abs(lam_sq) * q.dx:.3g} > {PHASE_GUARD}: phase not resolved; refine the grid"
            )
        self.p = p
        lam = self.point.lam
        self._slot = {"X": lam * np.conj(q.values), "Y": lam * q.values}
        self._cache: dict[str, np.ndarray] = {"": np.ones(q.n, dtype=complex)}

    def partial(self, prefix: str) -> np.ndarray:
        if prefix in self._cache:
            return self._cache[prefix]
        prev = self.partial(prefix[:-1])
        d = prefix.count("X") - prefix.count("Y")
        zh = 2j * self.point.lam_sq * d * self.q.dx
        out = _volterra_step(self._slot[prefix[-1]] * prev, zh, self.q.dx, self.p)
        self._cache[prefix] = out
        return out

    def value(self, word: str) -> complex:
        word = W._require_admissible(W.as_word(word))
        if not word:
            return 1.0 + 0j
        return complex(self.partial(word)[-1])


def word_integrals(word_list: Iterable[str], q: GridPotential, point) -> dict[str, WordIntegralValue]:
    point = as_point(point)
    word_list = [W.as_word(w) for w in word_list]
    for w in word_list:
        W._require_admissible(w)
    if not np.any(q.values):
        return {w: WordIntegralValue(w, point, 0j if w else 1 + 0j, 0.0) for w in word_list}
    hi = WordEvaluator(q, point, STENCIL)
    lo = WordEvaluator(q, point, LOW_STENCIL)
    out = {}
    for w in word_list:
        v_hi, v_lo = hi.value(w), lo.value(w)
        out[w] = WordIntegralValue(w, point, v_hi, abs(v_hi - v_lo))
    return out


def word_integral(word: str, q: GridPotential, point) -> WordIntegralValue:
    word = W.as_word(word)
    return word_integrals([word], q, point)[word]


def _combination(series: W.WordSeries, values: dict[str, WordIntegralValue]) -> tuple[complex, float]:
    total, err = 0j, 0.0
    for w, c in series.items():
        total += float(c) * values[w].value
        err += abs(float(c)) * values[w].quad_error
    return total, err


def picard_terms(q: GridPotential, point, J: int = 4) -> ExpansionTerms:
    """s_2j = (-1)^j T_{(XY)^(j)} for j = 1..J, with the partial sums of 1 + sum s_2j."""
    if not 1 <= J <= MAX_PICARD_J:
        raise ValueError(f"J must be in 1..{MAX_PICARD_J}")
    point = as_point(point)
    strict = [W.strict_word(j) for j in range(1, J + 1)]
    vals = word_integrals(strict, q, point)
    s = tuple((-1) ** j * vals[w].value for j, w in enumerate(strict, start=1))
    errs = tuple(vals[w].quad_error for w in strict)
    partial = tuple((1 + np.cumsum(s)).tolist())
    return ExpansionTerms(point, s, (), partial, errs)


def _scalar_log_terms(s: Sequence[complex]) -> list[complex]:
    """Graded pieces of ln(1 + s_2 + s_4 + ...) by the power-series recursion."""
    J = len(s)
    a = [0j] + list(s)
    b = [0j] * (J + 1)
    for n in range(1, J + 1):
        acc = n * a[n]
        for k in range(1, n):
            acc -= k * b[k] * a[n - k]
        b[n] = acc / n
    return b[1:]


def b_terms(q: GridPotential, point, J: int = 4) -> ExpansionTerms:
    """Connected terms b_2j = -sum_w c_w T_w from the shuffle logarithm, j = 1..J.

    ``identity_defects[j-1]`` compares each b_2j with the same term obtained from
    the Picard terms through the scalar logarithm series (b_4 = s_4 - s_2^2/2, ...).
    """
    if not 1 <= J <= MAX_LOG_J:
        raise ValueError(f"J must be in 1..{MAX_LOG_J}")
    point = as_point(point)
    logs = W.log_series(J)
    strict = [W.strict_word(j) for j in range(1, J + 1)]
    needed = sorted(set(strict).union(*[set(L) for L in logs]))
    vals = word_integrals(needed, q, point)
    s = tuple((-1) ** j * vals[w].value for j, w in enumerate(strict, start=1))
    b, errs = [], []
    for L in logs:
        v, e = _combination(L, vals)
        b.append(-v)
        errs.append(e)
    scalar = _scalar_log_terms(s)
    defects = tuple(abs(x - y) for x, y in zip(b, scalar))
    partial = tuple((1 + np.cumsum(s)).tolist())
    return ExpansionTerms(point, s, tuple(b), partial, tuple(errs), defects)


def resolve_for(q: GridPotential, point, guard: float = PHASE_GUARD) -> GridPotential:
    """Refine q by a power of two until |lambda^2| dx <= guard."""
    lam_sq = abs(as_point(point).lam_sq)
    factor = 1
    while lam_sq * q.dx / factor > guard:
        factor *= 2
    return refine(q, factor) if factor > 1 else q


@dataclass(frozen=True, eq=False)
class DecayProfile:
    zeta: np.ndarray
    magnitudes: dict[int, np.ndarray]
    slopes_lambda: dict[int, float] = field(default_factory=dict)
    slopes_zeta: dict[int, float] = field(default_factory=dict)

    def slope(self, j: int) -> float:
        """Log-log slope of |b_2j| against |lambda|."""
        return self.slopes_lambda[j]


def decay_profile(q: GridPotential, zetas: Sequence[float], J: int = 3) -> DecayProfile:
    """|b_2j| along lambda = e^{i pi/4} sqrt(zeta/2) with fitted power laws.

    Slopes are least-squares fits of log|b_2j| against log|lambda| (and against
    log zeta = 2 log|lambda| + log 2, which halves them).  The grid is refined
    automatically to keep the phase resolved at the largest zeta.
    """
    z = np.asarray(zetas, dtype=float)
    if z.size == 0 or np.any(z < 1) or np.any(np.diff(z) <= 0):
        raise ValueError("zeta samples must be >= 1 and strictly ascending")
    if not np.any(q.values):
        return DecayProfile(z, {j: np.zeros(z.size) for j in range(1, J + 1)})
    fine = resolve_for(q, SpectralPoint.on_ray(float(z[-1])))
    mags = {j: np.empty(z.size) for j in range(1, J + 1)}
    for i, zeta in enumerate(z):
        terms = b_terms(fine, SpectralPoint.on_ray(float(zeta)), J)
        for j in range(1, J + 1):
            mags[j][i] = abs(terms.b_terms[j - 1])
    slopes_l, slopes_z = {}, {}
    if z.size >= 2:
        log_lam = np.log(np.sqrt(z / 2.0))
        for j, m in mags.items():
            if np.all(m > 0):
                slopes_l[j] = float(np.polyfit(log_lam, np.log(m), 1)[0])
                slopes_z[j] = float(np.polyfit(np.log(z), np.log(m), 1)[0])
    return DecayProfile(z, mags, slopes_l, slopes_z)


def connected_asymptotic(word: str, q: GridPotential, point, order: int = 2) -> complex:
    """Large-|lambda| expansion of a connected word integral through ``order`` extra derivatives.

    Uses the exact coefficients of :func:`words.asymptotic_coefficients`; slot
    derivatives are spectral.
    """
    from .potential import spectral_derivative

    point = as_point(point)
    word = W.as_word(word)
    j = W.degree(word)
    kappa = -2j * point.lam_sq
    lam2j = point.lam ** (2 * j)
    derivs: dict[tuple[str, int], np.ndarray] = {}

    def slot(letter: str, m: int) -> np.ndarray:
        key = (letter, m)
        if key not in derivs:
            base = np.conj(q.values) if letter == "X" else q.values
            derivs[key] = base if m == 0 else spectral_derivative(base, m, q.dx)
        return derivs[key]

    total = 0j
    for ell in range(order + 1):
        acc = 0j
        for orders, c in W.asymptotic_coefficients(word, ell).items():
            prod = np.ones(q.n, dtype=complex)
            for letter, m in zip(word, orders):
                prod = prod * slot(letter, m)
            acc += float(c) * q.dx * np.sum(prod)
        total += lam2j * kappa ** (1 - 2 * j - ell) * acc
    return total


def series_vs_ode(q: GridPotential, point, J: int = 4, ode_tol: float = 1e-12) -> dict:
    """Defects of the truncated Picard and log series against the ODE s11, per truncation order."""
    point = as_point(point)
    terms = b_terms(q, point, J)
    ref = scattering_coefficients(q, point, ode_tol)
    log_ref = cmath.log(ref.s11)
    return {
        "s11_ode": ref.s11,
        "picard_defects": [abs(ref.s11 - p) for p in terms.partial_sums],
        "log_defects": [abs(log_ref - p) for p in terms.log_partial_sums()],
        "terms": terms,
    }
