import math

import numpy as np
import pytest

from radialmap import sqdt
from radialmap.errors import DefectRangeError, DomainError
from radialmap.systems import standard_grid
from radialmap.verify import identity_deviation, overlap_matrix, residual_scan


def test_sodium_energies():
    got = [sqdt.sqdt_coulomb_energy(sqdt.SODIUM, 3, n, 0) for n in (1, 2, 3)]
    want = [-1 / (4 * x * x) for x in (1.65, 2.65, 3.65)]
    assert got == pytest.approx(want, rel=1e-14)
    q = sqdt.coulomb_starred(sqdt.SODIUM, 3, 1, 0)
    assert q.n_s == 3 and q.n_star == pytest.approx(1.65)


def test_oscillator_spacing_is_four():
    prof = sqdt.OscillatorDefectProfile(((0, 1, 0.3),), J=1)
    E = [sqdt.sqdt_oscillator_energy(prof, 3, N, 0) for N in (0, 2, 4, 6)]
    assert np.allclose(np.diff(E), 4.0)


@pytest.mark.parametrize("l", [0, 1, 2])
def test_sodium_stack_orthonormal(l):
    states = [row[3] for row in sqdt.coulomb_stack(sqdt.SODIUM, 3, l, 5)]
    assert identity_deviation(overlap_matrix(states)) < 1e-12


@pytest.mark.parametrize("n,l", [(1, 0), (3, 0), (2, 1), (4, 2)])
def test_both_operator_forms(n, l):
    st = sqdt.sqdt_coulomb_state(sqdt.SODIUM, 3, n, l)
    grid = standard_grid(st)
    assert residual_scan(sqdt.sqdt_coulomb_operator(sqdt.SODIUM, 3, n, l), st, grid).max_rel < 1e-10
    assert residual_scan(sqdt.coulomb_veff_operator(sqdt.SODIUM, 3, n, l), st, grid).max_rel < 1e-10


def test_oscillator_operator_forms():
    prof = sqdt.OscillatorDefectProfile(((1, 2, 0.7),), J=-1)
    st = sqdt.sqdt_oscillator_state(prof, 4, 3, 1)
    grid = standard_grid(st)
    assert residual_scan(sqdt.sqdt_oscillator_operator(prof, 4, 3, 1), st, grid).max_rel < 1e-10
    assert residual_scan(sqdt.oscillator_veff_operator(prof, 4, 3, 1), st, grid).max_rel < 1e-10


def test_zero_defect_is_exact():
    q = sqdt.coulomb_starred(sqdt.ZERO_COULOMB, 3, 2, 1)
    assert (q.n_star, q.l_star, q.shift) == (2.0, 1.0, 0.0)


def test_range_violation_is_an_error():
    prof = sqdt.CoulombDefectProfile(((0, 0, 1.0),))
    with pytest.raises(DefectRangeError, match="delta - i"):
        sqdt.coulomb_starred(prof, 3, 1, 0)
    prof = sqdt.OscillatorDefectProfile(((0, 0, 1.5),))
    with pytest.raises(DefectRangeError):
        sqdt.oscillator_starred(prof, 3, 0, 0)


def test_profile_validation():
    with pytest.raises(DomainError):
        sqdt.CoulombDefectProfile(((0, 1, 2, 0.3),))
    with pytest.raises(DomainError):
        sqdt.CoulombDefectProfile(((0, 1, 0.3), (0, 2, 0.1)))
    with pytest.raises(DomainError):
        sqdt.CoulombDefectProfile(j=0.5)
    with pytest.raises(DomainError):
        sqdt.coulomb_starred(sqdt.CoulombDefectProfile(j=-2), 3, 1, 0)


def test_sector_classifier():
    assert sqdt.sector_classifier(0.0).name == "bosonic"
    assert sqdt.sector_classifier(1.0).name == "fermionic"
    assert sqdt.sector_classifier(2.0).name == "second fermionic"
    assert sqdt.sector_classifier(0.35) == "deformed"
    assert sqdt.sector_classifier(-1.0) == "deformed"


def test_boundary_probe_grows_like_gamma():
    vals = sqdt.boundary_probe((0, 0.0), 3, 0)
    assert vals[0] < vals[1] < vals[2]
    for v, gap in zip(vals, (0.3, 0.1, 0.03)):
        assert v == pytest.approx(math.gamma(2 * gap), rel=1e-6)
