from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dnls_scattering import variation as V
from dnls_scattering.errors import SizeError

values = st.lists(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False), min_size=1, max_size=7)


def step(vals):
    return V.from_points(np.arange(len(vals) + 1, dtype=float), vals)


def test_single_box():
    f = V.from_points([0.0, 1.0], [1.0])
    assert V.vp_norm(f, 2) == pytest.approx(math.sqrt(2))


def test_zero_function():
    f = V.from_points([0.0, 1.0, 2.0], [0.0, 0.0])
    assert V.vp_norm(f, 2) == 0 and V.vp_monotonicity_check(f, 2, 4)


def test_evaluation_convention():
    f = V.from_points([0.0, 1.0, 2.0], [3.0, 4.0])
    assert list(f(np.array([-1.0, 0.0, 0.5, 1.0, 2.0, 5.0]))) == [0, 3, 3, 4, 0, 0]


def test_homogeneity():
    f = step([1.0, -0.5 + 0.2j, 2.0])
    assert V.vp_norm(f.scaled(3 + 4j), 2.5) == pytest.approx(5 * V.vp_norm(f, 2.5), rel=1e-12)


def test_reparametrization_invariance():
    f = step([1.0, -2.0, 0.5, 3.0])
    g = f.reparametrized(lambda t: np.sinh(t) + 3 * t)
    assert V.vp_norm(g, 3) == V.vp_norm(f, 3)


@settings(max_examples=100, deadline=None)
@given(values)
def test_monotone_in_p(vals):
    assert V.vp_monotonicity_check(step(vals), 2, 4)


@settings(max_examples=60, deadline=None)
@given(values, st.floats(1.1, 5.0))
def test_dp_agrees_with_enumeration(vals, p):
    f = step(vals)
    assert V.vp_norm_lower_bound(f, p) == pytest.approx(V.vp_norm(f, p), rel=1e-12, abs=1e-15)


def test_dp_agreement_random(rng):
    for _ in range(100):
        f = V.random_step_function(rng, int(rng.integers(2, 11)))
        assert V.vp_norm(f, 2) == pytest.approx(V.vp_norm_lower_bound(f, 2), rel=1e-12)


def test_size_guard(rng):
    f = V.random_step_function(rng, 15)
    with pytest.raises(SizeError):
        V.vp_norm(f, 2)
    assert V.vp_norm_lower_bound(f, 2) > 0


def test_atom_constant():
    # alternating atom: increments 1/sqrt2, sqrt2, 1/sqrt2 give sqrt(3) > 2^{1/2}
    f = step([1 / math.sqrt(2), -1 / math.sqrt(2)])
    assert V.atom_ratio(f, 2) == pytest.approx(math.sqrt(3))
    assert V.atom_ratio(f, 2) > 2 ** 0.5


@settings(max_examples=100, deadline=None)
@given(values, st.floats(1.1, 5.0))
def test_atom_ratio_at_most_two(vals, p):
    assert V.atom_ratio(step(vals), p) <= 2 + 1e-12


def test_point_mass_convolution_is_identity():
    f = step([1.0, -2.0, 0.5])
    rep = V.convolution_bound_check(V.DiscreteKernel((0.0,), (1.0,)), f, 2)
    assert rep.lhs == pytest.approx(rep.rhs, rel=1e-14) and not rep.violated


def test_two_point_average_box():
    f = V.from_points([0.0, 1.0], [1.0])
    g = V.DiscreteKernel((0.0, 0.5), (0.5, 0.5))
    h = V.convolve(g, f)
    assert list(h.values) == [0.5, 1.0, 0.5]
    # chain 0 -> 1 -> 0 on the averaged sequence 0, 1/2, 1, 1/2, 0 gives sqrt 2
    rep = V.convolution_bound_check(g, f, 2)
    assert rep.lhs == pytest.approx(math.sqrt(2))
    assert rep.rhs == pytest.approx(math.sqrt(2)) and not rep.violated


def test_random_convolution_pairs(rng):
    for _ in range(50):
        f = V.random_step_function(rng, int(rng.integers(2, 5)))
        g = V.random_kernel(rng, int(rng.integers(1, 4)))
        assert not V.convolution_bound_check(g, f, 2).violated


def test_convolution_size_guard():
    f = step(list(range(1, 8)))
    g = V.DiscreteKernel((0.0, 0.3, 0.6), (1.0, 1.0, 1.0))
    with pytest.raises(SizeError):
        V.convolution_bound_check(g, f, 2)


def test_validation_and_json():
    with pytest.raises(ValueError):
        V.from_points([0.0, 0.0], [1.0])
    with pytest.raises(ValueError):
        V.from_points([0.0, 1.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        V.vp_norm(step([1.0]), 1.0)
    f = step([1 + 2j, -1.0])
    assert np.array_equal(V.StepFunction.from_json(f.to_json()).values, f.values)
