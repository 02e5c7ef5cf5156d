import numpy as np
import pytest

from radialmap import continuum
from radialmap.errors import DomainError
from radialmap.systems import CoulombQN, coulomb_state
from radialmap.verify import proportionality_error


@pytest.mark.parametrize("lam,E,l", [(0, 0.25, 0), (1, 1.0, 1), (0, 4.0, 2)])
def test_continuum_map(lam, E, l):
    r = continuum.continuum_map(3, E, l, lam)
    assert r.transported_residual < 1e-6
    assert r.ratio_error < 1e-8
    assert r.F == pytest.approx(2 / np.sqrt(E))


def test_repulsive_map_has_negative_F():
    r = continuum.repulsive_map(3, 1.0, 0, 0)
    assert r.F < 0
    assert r.transported_residual < 1e-6 and r.ratio_error < 1e-8


def test_attractive_and_repulsive_differ():
    y = np.geomspace(0.1, 10, 100)
    att = continuum.coulomb_continuum_wave(3, 1.0, 0)(y)
    rep = continuum.coulomb_continuum_wave(3, 1.0, 0, repulsive=True)(y)
    _, err = proportionality_error(att, rep)
    assert err > 0.1


def test_incoming_is_conjugate():
    wave = continuum.coulomb_continuum_wave(3, 2.0, 1, 1)
    y = np.geomspace(*wave.span, 50)
    out = wave(y)
    inc = continuum.coulomb_continuum_wave(3, 2.0, 1, -1)(y)
    assert np.allclose(inc, np.conj(out), rtol=1e-13, atol=0)


def test_continued_wave_is_bound_state():
    y = np.geomspace(0.1, 20, 50)
    _, err = proportionality_error(coulomb_state(CoulombQN(3, 3, 1))(y), continuum.continued_coulomb_wave(3, 3, 1)(y))
    assert err < 1e-12


def test_analytic_continuation():
    _, err = continuum.continuation_check(3, 2, 0)
    assert err < 1e-12


def test_wave_residuals():
    assert continuum.wave_residual(continuum.inverted_oscillator_wave(3, -1.5, 1)) < 1e-10
    assert continuum.wave_residual(continuum.coulomb_continuum_wave(5, 0.5, 2, -1)) < 1e-10


def test_errors():
    with pytest.raises(DomainError):
        continuum.coulomb_continuum_wave(3, -1.0, 0)
    with pytest.raises(DomainError):
        continuum.coulomb_continuum_wave(3, 1.0, 0, sign=2)
    with pytest.raises(DomainError):
        continuum.continuum_map(3, 1.0, 0, 2)
