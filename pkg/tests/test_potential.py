from __future__ import annotations

import math

import numpy as np
import pytest

from dnls_scattering import potential as P
from dnls_scattering.errors import DomainError

from conftest import gaussian


def test_l2_norm_of_unit_gaussian():
    # int exp(-2 x^2) dx = sqrt(pi / 2)
    assert P.l2_norm_sq(gaussian()) == pytest.approx(math.sqrt(math.pi / 2), rel=1e-13)


def test_fourier_of_gaussian_matches_closed_form():
    ft = P.fourier(gaussian())
    exact = np.exp(-ft.xi**2 / 4) / math.sqrt(2)
    assert np.max(np.abs(ft.qhat - exact)) < 1e-13


def test_parseval():
    q = gaussian(0.7 + 0.2j, width=1.3, chirp=0.9)
    ft = P.fourier(q)
    assert ft.dxi * ft.power().sum() == pytest.approx(P.l2_norm_sq(q), rel=1e-11)


def test_inverse_fourier_roundtrip():
    q = gaussian(0.5, chirp=-1.2)
    back = P.inverse_fourier(P.fourier(q), q)
    assert np.max(np.abs(back.values - q.values)) < 1e-14


def test_spectral_derivative_against_closed_form():
    an = P.AnalyticPotential("gaussian", 0.8, 1.2, 0.6)
    q = P.sample(an)
    for order in (1, 2):
        assert np.max(np.abs(P.spectral_derivative(q, order) - an.derivative(q.x, order))) < 1e-10


def test_domain_error_when_not_decayed():
    with pytest.raises(DomainError, match="boundary"):
        P.sample(P.AnalyticPotential("gaussian", 1.0), -3.0, 3.0, 256)


def test_grid_validation_and_immutability():
    with pytest.raises(ValueError):
        P.GridPotential(-1.0, 1.0, np.zeros(4))
    q = gaussian()
    with pytest.raises(ValueError):
        q.values[0] = 1.0


def test_refine_is_exact_for_band_limited_samples():
    an = P.AnalyticPotential("gaussian", 1.0, 1.0, 0.5)
    r = P.refine(P.sample(an), 4)
    assert r.n == 4 * 2048
    assert np.max(np.abs(r.values - an(r.x))) < 1e-13


def test_interpolate_between_nodes():
    an = P.AnalyticPotential("sech", 0.6, 1.0, 0.3)
    q = P.sample(an, -35.0, 35.0, 2048)
    pts = np.array([-1.234, 0.0101, 2.5, 40.0])
    vals = P.interpolate(q, pts)
    assert np.max(np.abs(vals[:3] - an(pts[:3]))) < 1e-8
    assert vals[3] == 0


def test_rescale_preserves_mass():
    q = gaussian(0.5)
    assert P.l2_norm_sq(P.rescale(q, 2.0)) == pytest.approx(P.l2_norm_sq(q), rel=1e-12)
    kept = P.rescale(q, 2.0, keep_grid=True)
    assert kept.n == q.n and P.l2_norm_sq(kept) == pytest.approx(P.l2_norm_sq(q), rel=1e-9)


def test_hs_norm_reduces_to_l2():
    q = gaussian(0.4)
    assert P.hs_norm(q, 0.0) ** 2 == pytest.approx(P.l2_norm_sq(q), rel=1e-12)
    assert P.hs_norm(q, 1.0) > P.hs_norm(q, 0.0)


def test_csv_roundtrip():
    q = gaussian(0.3 + 0.1j, chirp=0.4, n=256)
    back = P.from_csv(P.to_csv(q))
    assert back.n == q.n and back.x_min == q.x_min
    assert back.x_max == pytest.approx(q.x_max, abs=1e-12)
    assert np.array_equal(back.values, q.values)


def test_config_and_yaml(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text("potential:\n  family: sech\n  amplitude_re: 0.5\n  x_min: -40\n  x_max: 40\n  n: 1024\n")
    q = P.from_config(P.load_config(path))
    assert q.n == 1024 and abs(q.values).max() == pytest.approx(0.5, rel=1e-3)
    with pytest.raises(ValueError):
        P.from_config({"colour": 1})


def test_zero_potential():
    z = P.zero_potential()
    assert not np.any(z.values) and P.l2_norm_sq(z) == 0
