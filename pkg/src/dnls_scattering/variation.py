"""p-variation norms of step functions and a discrete check of ||g * v||_{V^p} <= ||g||_1 ||v||_{V^p}.

A step function with breakpoints t_1 < ... < t_N and values c_1..c_{N-1} on
[t_j, t_{j+1}) is 0 before t_1 and from t_N on.  Its V^p norm depends only on the
ordered value sequence 0, c_1, ..., c_{N-1}, 0: a sampling chain picks a
subsequence, and the chain always ends at +infinity where the value is 0.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import SizeError

MAX_EXACT_N = 14
CONVOLUTION_TOL = 0.05


@dataclass(frozen=True, eq=False)
class StepFunction:
    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.array(self.breakpoints, dtype=float)
        c = np.array(self.values, dtype=complex)
        if t.ndim != 1 or t.size < 1:
            raise ValueError("need at least one breakpoint")
        if c.size != t.size - 1:
            raise ValueError(f"{t.size} breakpoints need {t.size - 1} values, got {c.size}")
        if np.any(np.diff(t) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        t.setflags(write=False)
        c.setflags(write=False)
        object.__setattr__(self, "breakpoints", t)
        object.__setattr__(self, "values", c)

    @property
    def N(self) -> int:
        return self.breakpoints.size

    def sequence(self) -> np.ndarray:
        """Ordered values 0, c_1, ..., c_{N-1}, 0 (left tail, pieces, right tail)."""
        return np.concatenate([[0j], self.values, [0j]])

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        j = np.searchsorted(self.breakpoints, x, side="right")
        return self.sequence()[j]

    def scaled(self, alpha: complex) -> "StepFunction":
        return StepFunction(self.breakpoints, alpha * self.values)

    def reparametrized(self, phi) -> "StepFunction":
        return StepFunction(phi(self.breakpoints), self.values)

    def to_json(self) -> dict:
        return {"breakpoints": self.breakpoints.tolist(),
                "values": [[float(v.real), float(v.imag)] for v in self.values]}

    @classmethod
    def from_json(cls, data: dict) -> "StepFunction":
        vals = [complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v) for v in data["values"]]
        return cls(np.asarray(data["breakpoints"], float), np.asarray(vals, complex))

    @classmethod
    def from_json_text(cls, text: str) -> "StepFunction":
        return cls.from_json(json.loads(text))


def _check_p(p: float) -> None:
    if not p > 1:
        raise ValueError("p must exceed 1")


def vp_norm(f: StepFunction, p: float) -> float:
    """Exact V^p norm by enumerating every sampling chain."""
    _check_p(p)
    if f.N > MAX_EXACT_N:
        raise SizeError(f"N = {f.N} > {MAX_EXACT_N} breakpoints; use vp_norm_lower_bound")
    seq = f.sequence()
    head, last = seq[:-1], seq[-1]
    best = 0.0
    m = head.size
    for r in range(1, m + 1):
        for combo in itertools.combinations(range(m), r):
            chain = np.append(head[list(combo)], last)
            best = max(best, float(np.sum(np.abs(np.diff(chain)) ** p)))
    return best ** (1.0 / p)


def vp_norm_lower_bound(f: StepFunction, p: float) -> float:
    """Chain maximisation by dynamic programming over the value sequence.

    best[i] is the largest increment sum over chains ending at sample i; any
    chain is reachable this way, so the value is attained and serves as a
    lower bound for any N.
    """
    _check_p(p)
    seq = f.sequence()
    best = np.zeros(seq.size)
    for i in range(1, seq.size):
        best[i] = max(0.0, float(np.max(best[:i] + np.abs(seq[i] - seq[:i]) ** p)))
    return float(best[-1] ** (1.0 / p))


def vp_monotonicity_check(f: StepFunction, p: float, q: float) -> bool:
    if not q > p:
        raise ValueError("need q > p")
    return vp_norm(f, q) <= vp_norm(f, p) * (1 + 1e-12) + 1e-15


def atom_ratio(f: StepFunction, p: float) -> float:
    """||f||_{V^p} / (sum |c_j|^p)^{1/p}; never above 2 for p >= 1."""
    s = float(np.sum(np.abs(f.values) ** p)) ** (1.0 / p)
    return vp_norm(f, p) / s if s else 0.0


@dataclass(frozen=True)
class DiscreteKernel:
    """Point masses g = sum_k w_k delta(x - s_k)."""

    offsets: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.offsets) != len(self.weights) or not self.offsets:
            raise ValueError("kernel needs matching nonempty offsets and weights")
        if any(w < 0 for w in self.weights):
            raise ValueError("kernel weights must be nonnegative")

    @property
    def l1_norm(self) -> float:
        return float(sum(abs(w) for w in self.weights))


def convolve(g: DiscreteKernel, f: StepFunction) -> StepFunction:
    """g * f exactly, as a step function on the union of shifted breakpoints."""
    t = np.unique(np.concatenate([f.breakpoints + s for s in g.offsets]))
    mids = 0.5 * (t[:-1] + t[1:])
    vals = sum(w * f(mids - s) for s, w in zip(g.offsets, g.weights))
    return StepFunction(t, np.asarray(vals, dtype=complex))


@dataclass(frozen=True)
class ConvolutionReport:
    lhs: float
    rhs: float
    violated: bool


def convolution_bound_check(g: DiscreteKernel, f: StepFunction, p: float,
                            tol: float = CONVOLUTION_TOL) -> ConvolutionReport:
    h = convolve(g, f)
    if h.N > MAX_EXACT_N:
        raise SizeError(f"convolution has {h.N} breakpoints > {MAX_EXACT_N}")
    lhs = vp_norm(h, p)
    rhs = g.l1_norm * vp_norm(f, p)
    return ConvolutionReport(lhs, rhs, lhs > rhs * (1 + tol))


def random_step_function(rng: np.random.Generator, n_breakpoints: int, complex_values: bool = True) -> StepFunction:
    t = np.sort(rng.uniform(-5, 5, n_breakpoints))
    while np.any(np.diff(t) <= 0):
        t = np.sort(rng.uniform(-5, 5, n_breakpoints))
    c = rng.normal(size=n_breakpoints - 1)
    if complex_values:
        c = c + 1j * rng.normal(size=n_breakpoints - 1)
    return StepFunction(t, c)


def random_kernel(rng: np.random.Generator, n_masses: int) -> DiscreteKernel:
    return DiscreteKernel(tuple(rng.uniform(-1, 1, n_masses).tolist()), tuple(rng.uniform(0, 1, n_masses).tolist()))


def from_points(breakpoints: Sequence[float], values: Sequence[complex]) -> StepFunction:
    return StepFunction(np.asarray(breakpoints, float), np.asarray(values, complex))
