from __future__ import annotations

import math

import numpy as np
import pytest

from dnls_scattering import evolution as E, spectral as F
from dnls_scattering.errors import BoundaryContaminationError, InstabilityError
from dnls_scattering.potential import AnalyticPotential, sample, zero_potential

from conftest import RAY


@pytest.fixture(scope="module")
def q0():
    return E.default_initial(0.3)


def test_zero_stays_zero():
    z = zero_potential(-40, 40, 1024)
    assert not np.any(E.evolve(z, 0.01, 1e-3).potential.values)


def test_one_step_mass(q0):
    s = E.step(E.initial_state(q0, 1e-4))
    assert s.mass_drift <= 1e-12 and s.step_count == 1 and s.t == pytest.approx(1e-4)


def test_linear_limit_is_exact():
    q = E.default_initial(2.0)
    s = E.evolve(q, 0.3, 1e-3, linear=True)
    assert np.max(np.abs(s.potential.values - E.linear_exact(q, 0.3))) < 1e-10


def test_zero_time_is_identity(q0):
    assert np.array_equal(E.evolve(q0, 0.0, 1e-4).potential.values, q0.values)


def test_final_partial_step(q0):
    s = E.evolve(q0, 0.00105, 1e-4)
    assert s.t == pytest.approx(0.00105) and s.step_count == 11


def test_composition(q0):
    a = E.evolve(E.evolve(q0, 0.05, 1e-3), 0.05, 1e-3)
    b = E.evolve(q0, 0.1, 1e-3)
    assert np.max(np.abs(a.potential.values - b.potential.values)) < 1e-10


def test_conservation_over_half_unit(q0):
    s = E.evolve(q0, 0.5, 1e-4, record_every=1000)
    h0 = F.conserved(q0).as_tuple()
    h1 = F.conserved(s.potential).as_tuple()
    assert max(E.relative_drift(a, b) for a, b in zip(h0, h1)) <= 1e-6
    assert len(s.history) == 6 and s.history[0][0] == 0.0


def test_fourth_order_convergence():
    q = E.default_initial(0.5)
    H = F.conserved(q).H2
    drift = []
    for dt in (0.02, 0.01):
        drift.append(abs(F.conserved(E.evolve(q, 0.5, dt).potential).H2 - H))
    assert drift[0] / drift[1] >= 8


def test_isospectrality(q0):
    rep = E.isospectrality_report(q0, 0.25, 1e-4, [0.5, 0.8, 0.6 * RAY])
    assert all(r.s11_defect <= 1e-4 for r in rep.rows)
    assert rep.rows[0].s21_defect <= 1e-4
    assert math.isnan(rep.rows[2].s21_defect)
    assert max(rep.drifts) <= 1e-6


def test_s21_rotation_direction(q0):
    # the rotation is exp(+4 i lambda^4 T); the reversed sense is clearly wrong
    rep = E.isospectrality_report(q0, 0.25, 1e-4, [0.5])
    row = rep.rows[0]
    assert row.s21_defect < 1e-8 < 1e-2 < row.s21_defect_reversed


def test_isospectrality_zero():
    z = zero_potential(-40, 40, 1024)
    rep = E.isospectrality_report(z, 0.01, 1e-3, [0.5])
    assert rep.rows[0].s11_defect == 0 and rep.rows[0].s21_defect == 0


def test_boundary_contamination():
    q = sample(AnalyticPotential("gaussian", 0.3, chirp=6.0), -10, 10, 1024)
    with pytest.raises(BoundaryContaminationError):
        E.isospectrality_report(q, 1.0, 1e-3, [0.5])


def test_blow_up_guard():
    q = E.default_initial(2.0)
    with pytest.raises(InstabilityError):
        E.evolve(q, 5.0, 0.05)


def test_argument_checks(q0):
    with pytest.raises(ValueError):
        E.evolve(q0, -1.0, 1e-3)
    with pytest.raises(ValueError):
        E.evolve(q0, 1.0, 0.0)
