from __future__ import annotations

import cmath

import numpy as np
import pytest

from dnls_scattering import oracles, scattering as S, simplex as X
from dnls_scattering import words as W
from dnls_scattering.errors import AdmissibilityError, RegionError, ResolutionError
from dnls_scattering.potential import AnalyticPotential, sample

from conftest import RAY, gaussian


def test_zero_potential_gives_zero(zero):
    assert X.word_integral("XXYY", zero, 0.5 * RAY).value == 0
    t = X.picard_terms(zero, 0.5 * RAY, 3)
    assert t.s_terms == (0, 0, 0) and t.partial_sums == (1, 1, 1)


def test_xy_against_nested_simpson():
    an = AnalyticPotential("gaussian", 0.3)
    lam = 0.6 * RAY
    v = X.word_integral("XY", sample(an), lam)
    assert abs(v.value - oracles.nested_simpson("XY", an, lam, -9.0, 9.0, 4000)) < 1e-8
    assert v.quad_error < 1e-8


def test_xxyy_against_richardson_trapezoid():
    an = AnalyticPotential("gaussian", 0.3)
    lam = 0.6 * RAY
    ref, corr = oracles.richardson_trapezoid("XXYY", an, lam, -9.0, 9.0, 500, 3)
    assert abs(X.word_integral("XXYY", sample(an), lam).value - ref) < 1e-5


@pytest.mark.parametrize("word", ["XXYXYY", "XYXXYY"])
def test_degree_three_words_against_oracle_on_real_axis(word):
    an = AnalyticPotential("gaussian", 0.6, chirp=0.5)
    ref = oracles.nested_simpson(word, an, 0.7, -9.0, 9.0, 6000)
    assert abs(X.word_integral(word, sample(an), 0.7).value - ref) < 1e-8


def test_shuffle_identity_numerically():
    q, lam = gaussian(0.5, chirp=0.3), 0.6 * RAY
    v = X.word_integrals(["XY", "XYXY", "XXYY"], q, lam)
    lhs = v["XY"].value ** 2
    rhs = 2 * v["XYXY"].value + 4 * v["XXYY"].value
    assert abs(lhs - rhs) < 1e-7


def test_general_shuffle_identity_degree_three():
    q, lam = gaussian(0.7), 0.5
    prod = W.shuffle("XY", "XXYY")
    vals = X.word_integrals(["XY", "XXYY", *prod], q, lam)
    rhs = sum(float(c) * vals[w].value for w, c in prod.items())
    assert abs(vals["XY"].value * vals["XXYY"].value - rhs) < 1e-10


def test_picard_partial_sums_approach_ode():
    q, lam = gaussian(0.2), 0.8 * RAY
    res = X.series_vs_ode(q, lam, J=4)
    d = res["picard_defects"]
    assert d[2] <= 1e-6
    assert all(a > b for a, b in zip(d, d[1:]))


@pytest.mark.parametrize("A", [2.0, 1.5 - 0.5j])
def test_homogeneity(A):
    q, lam = gaussian(0.2, chirp=0.2), 0.8 * RAY
    base = X.picard_terms(q, lam, 3).s_terms
    scaled = X.picard_terms(q.scaled(A), lam, 3).s_terms
    for j, (a, b) in enumerate(zip(base, scaled), start=1):
        assert abs(b / (a * abs(A) ** (2 * j)) - 1) < 1e-9


def test_b2_equals_s2_and_b4_identity():
    t = X.b_terms(gaussian(0.3), 0.7 * RAY, 3)
    assert t.b_terms[0] == t.s_terms[0]
    s2, s4 = t.s_terms[0], t.s_terms[1]
    assert abs(t.b_terms[1] - (s4 - s2**2 / 2)) < 1e-8
    assert max(t.identity_defects) < 1e-12


def test_log_series_sum_matches_log_of_ode():
    q, lam = gaussian(0.2), 0.8 * RAY
    t = X.b_terms(q, lam, 4)
    ref = cmath.log(S.scattering_coefficients(q, lam, 1e-12).s11)
    assert abs(sum(t.b_terms) - ref) < 1e-5


def test_argument_guards():
    q = gaussian(0.3)
    with pytest.raises(ValueError):
        X.picard_terms(q, 0.5, 7)
    with pytest.raises(ValueError):
        X.b_terms(q, 0.5, 6)
    with pytest.raises(AdmissibilityError):
        X.word_integral("YXXY", q, 0.5)
    with pytest.raises(RegionError):
        X.word_integral("XY", q, 0.5 - 0.4j)


def test_phase_resolution_guard():
    q = gaussian(0.3)
    lam = S.SpectralPoint.on_ray(40.0)  # |lambda^2| dx = 20 * 60/2048 > 0.3
    with pytest.raises(ResolutionError):
        X.word_integral("XY", q, lam)
    fine = X.resolve_for(q, lam)
    assert abs(lam.lam_sq) * fine.dx <= X.PHASE_GUARD
    assert np.isfinite(X.word_integral("XY", fine, lam).value)


def test_decay_profile_zero_potential(zero):
    prof = X.decay_profile(zero, [10.0, 20.0], J=3)
    assert prof.slopes_lambda == {} and all(not m.any() for m in prof.magnitudes.values())


def test_decay_profile_exponents():
    prof = X.decay_profile(gaussian(0.3), np.geomspace(10, 200, 6), J=3)
    assert prof.slope(2) == pytest.approx(-2, abs=0.3)
    assert prof.slope(3) == pytest.approx(-4, abs=0.5)
    # in the ray variable zeta = 2|lambda|^2 the same laws have half the slope
    assert prof.slopes_zeta[2] == pytest.approx(prof.slope(2) / 2)


def test_decay_profile_rejects_bad_samples():
    with pytest.raises(ValueError):
        X.decay_profile(gaussian(0.3), [20.0, 10.0])


@pytest.mark.parametrize("word", ["XY", "XXYY", "XXXYYY"])
def test_connected_asymptotics_match_direct_values(word):
    lam = S.SpectralPoint.on_ray(150.0)
    q = X.resolve_for(gaussian(0.5, chirp=0.4), lam)
    direct = X.word_integral(word, q, lam).value
    approx = X.connected_asymptotic(word, q, lam, order=2)
    assert abs(direct - approx) < 1e-3 * abs(direct)
