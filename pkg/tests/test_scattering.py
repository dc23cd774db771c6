from __future__ import annotations

import math

import numpy as np
import pytest

from dnls_scattering import oracles, scattering as S
from dnls_scattering.errors import RegionError
from dnls_scattering.potential import AnalyticPotential, sample

from conftest import RAY, gaussian


def test_zero_potential_is_a_fixed_point(zero):
    for lam in (0.7, 0.5 + 0.5j, 1.3j):
        d = S.scattering_coefficients(zero, lam)
        assert d.s11 == 1 and d.s21 == 0 and d.est_error == 0


def test_spectral_point_regions():
    assert S.SpectralPoint(0.7).region == "real-axis"
    assert S.SpectralPoint(1.2j).region == "real-axis"
    assert S.SpectralPoint(0.5 + 0.3j).region == "upper"
    assert S.SpectralPoint(0.5 - 0.3j).region == "lower"
    assert S.SpectralPoint.on_ray(8.0).lam_sq == pytest.approx(4j)


@pytest.mark.parametrize("lam", [0.4, 0.9, 0.6 * RAY])
def test_agrees_with_fixed_step_rk4(lam):
    an = AnalyticPotential("gaussian", 0.5)
    d = S.scattering_coefficients(sample(an), lam, ode_tol=1e-12)
    s11, s21 = oracles.rk4_jost(an, lam, -9.0, 9.0, 4000)
    assert abs(d.s11 - s11) < 1e-9
    if S.SpectralPoint(lam).region == "real-axis":
        assert abs(d.s21 - s21) < 1e-9


def test_upper_region_first_column_is_finite():
    an = AnalyticPotential("gaussian", 0.5)
    traj = S.jost_solve(sample(an), 0.7 * RAY)
    assert np.all(np.isfinite(traj.m1)) and np.max(np.abs(traj.m1)) < 10
    s11, _ = oracles.rk4_jost(an, 0.7 * RAY, -9.0, 9.0, 4000)
    assert abs(traj.m1[-1] - s11) < 1e-8


@pytest.mark.parametrize("A", [0.2, 0.5, 1.0])
@pytest.mark.parametrize("lam", [0.3, 0.7, 1.1])
def test_unitarity_on_real_axis(A, lam):
    assert S.scattering_coefficients(gaussian(A), lam).unitarity_defect <= 1e-8


@pytest.mark.parametrize("lam", [0.4j, 0.8j])
def test_hyperbolic_relation_on_imaginary_axis(lam):
    d = S.scattering_coefficients(gaussian(0.5, chirp=0.3), lam)
    assert d.unitarity_defect <= 1e-8


def test_unitarity_defect_undefined_off_axes():
    assert math.isnan(S.scattering_coefficients(gaussian(0.5), 0.5 * RAY).unitarity_defect)


def test_lower_region_is_rejected():
    with pytest.raises(RegionError):
        S.scattering_coefficients(gaussian(0.5), 0.5 - 0.3j)


@pytest.mark.parametrize("lam", [0.3, 0.7, 0.5 + 0.2j])
def test_symmetry_in_lambda(lam):
    rep = S.symmetry_check(gaussian(0.5, chirp=0.4), lam)
    assert rep.s11_deviation <= 1e-8 and rep.s21_deviation <= 1e-8


def test_error_estimate_bounds_tolerance_change():
    q = gaussian(0.5)
    a = S.scattering_coefficients(q, 0.7, ode_tol=1e-9)
    b = S.scattering_coefficients(q, 0.7, ode_tol=0.5e-9)
    assert abs(a.s11 - b.s11) < 10 * a.est_error


def test_trajectory_on_nodes_and_ends():
    q = gaussian(0.5, n=1024)
    traj = S.jost_solve(q, 0.7)
    assert traj.m1.shape == (1024,) and traj.m1[0] == 1 and traj.m2[0] == 0
    d = S.scattering_coefficients(q, 0.7)
    assert abs(traj.m1[-1] - d.s11) < 1e-8


def test_sweep_keeps_order_and_collects_errors():
    q = gaussian(0.5)
    pts = [0.5, 0.5 - 0.3j, 1.0, 0.4 * RAY]
    serial = S.lambda_sweep(q, pts, workers=1)
    threaded = S.lambda_sweep(q, pts, workers=3)
    assert isinstance(serial[1], RegionError) and isinstance(threaded[1], RegionError)
    for a, b in zip(serial, threaded):
        if not isinstance(a, Exception):
            assert a.s11 == b.s11 and a.point == b.point


def test_threads_from_environment(monkeypatch):
    monkeypatch.setenv("DNLS_THREADS", "2")
    assert S._default_workers() == 2
    monkeypatch.setenv("DNLS_THREADS", "junk")
    assert S._default_workers() == 1
