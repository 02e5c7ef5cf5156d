import math
import warnings

import numpy as np
import pytest

from radialmap import verify
from radialmap.errors import SolverError
from radialmap.systems import CoulombQN, OscillatorQN, coulomb_state, oscillator_state


def test_laguerre_rule_moments():
    rule = verify.laguerre_rule(30, alpha=1.5, scale=0.5)
    for m in range(5):
        # integral of x^m e^{-2x} x^1.5 over the half line
        want = math.gamma(m + 2.5) / 2 ** (m + 2.5)
        got = verify.integrate_halfline(lambda x: x ** (m + 1.5) * np.exp(-2 * x), rule)
        assert got == pytest.approx(want, rel=1e-12)


def test_gaussian_rule_moments():
    rule = verify.gaussian_rule(30, alpha=0.5, rate=1.0)
    got = verify.integrate_halfline(lambda Y: Y**2 * np.exp(-Y**2), rule)
    assert got == pytest.approx(math.sqrt(math.pi) / 4, rel=1e-12)


def test_two_quadrature_routes_agree():
    states = [coulomb_state(CoulombQN(3, n, 1)) for n in (2, 3, 4)]
    exact = verify.overlap_matrix(states)
    legendre = verify.overlap_matrix(states, verify.legendre_rule(400, scale=10.0))
    assert np.max(np.abs(exact - legendre)) < 1e-10
    assert verify.identity_deviation(exact) < 1e-13


def test_mixed_tail_rule():
    a = coulomb_state(CoulombQN(3, 1, 0))
    b = oscillator_state(OscillatorQN(3, 0, 0))
    assert verify.pair_rule(a, b).variant == "mapped-gauss-legendre"


def test_tail_warning():
    rule = verify.laguerre_rule(4)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        verify.integrate_halfline(lambda x: np.exp(-x) * x**30, rule)
    assert any(issubclass(w.category, verify.AccuracyWarning) for w in caught)


def test_proportionality():
    t = np.array([1.0, 2.0, 3.0])
    c, err = verify.proportionality_error(t, 2.5j * t)
    assert c == pytest.approx(2.5j) and err < 1e-15


def test_fd_oscillator_and_convergence():
    fd = verify.fd_eigensolve(lambda Y: Y**2, 10.0, 3, 2000)
    cmp = verify.compare_spectra([3.0, 7.0, 11.0], fd)
    assert cmp.max_rel < 1e-5
    ratio = verify.convergence_ratio(lambda Y: Y**2, 10.0, 3, 1000, [3.0, 7.0, 11.0])
    assert 3 <= ratio <= 5


def test_fd_errors():
    with pytest.raises(SolverError):
        verify.fd_eigensolve(lambda y: y, 1.0, 5, 3)
    with pytest.raises(SolverError):
        verify.fd_eigensolve(lambda y: np.full_like(y, np.nan), 1.0, 1, 10)


def test_degeneracy_and_pairings():
    spectra = {"b": [((1,), 0.0), ((2,), 1.0), ((3,), 2.0)], "f": [((2,), 1.0), ((3,), 2.0)]}
    clusters = verify.degeneracy_report(spectra)
    paired, lone_b, lone_f = verify.pairings(clusters, "b", "f")
    assert len(paired) == 2 and lone_b == [(1,)] and lone_f == []
