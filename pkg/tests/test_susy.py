import numpy as np
import pytest

from radialmap import susy
from radialmap.errors import DomainError
from radialmap.systems import CoulombQN, OscillatorQN, coulomb_state, oscillator_state, standard_grid
from radialmap.verify import residual_scan


@pytest.mark.parametrize("system,dim,l", [("coulomb", 2, 0), ("coulomb", 3, 2), ("coulomb", 7, 1),
                                          ("oscillator", 1, 0), ("oscillator", 1, 1), ("oscillator", 4, 3)])
def test_ground_state_is_annihilated(system, dim, l):
    sp = susy.superpotential(system, dim, l)
    assert susy.ground_annihilation(sp) < 1e-12
    assert susy.exp_minus_u_error(sp) < 1e-12


def test_partner_potentials_reproduce_shifted_barrier():
    sp = susy.superpotential("coulomb", 3, 1)
    v_plus, v_minus = sp.partner_potentials()
    y = np.geomspace(0.1, 50, 50)
    k = sp.kappa
    assert np.allclose(v_plus(y), k * (k - 1) / y**2 - 1 / y + 1 / (4 * k * k), rtol=1e-13)
    assert np.allclose(v_minus(y), k * (k + 1) / y**2 - 1 / y + 1 / (4 * k * k), rtol=1e-13)
    sp = susy.superpotential("oscillator", 3, 0)
    v_plus, v_minus = sp.partner_potentials()
    assert np.allclose(v_plus(y), y**2 - 3.0, rtol=1e-13)
    assert np.allclose(v_minus(y), y**2 + 2 / y**2 - 1.0, rtol=1e-13)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_coulomb_intertwining(n):
    sp = susy.superpotential("coulomb", 3, 0)
    info = susy.intertwining_check(sp, coulomb_state(CoulombQN(3, n, 0)))
    assert info["shape_error"] < 1e-12
    assert info["constant_sq_rel_error"] < 1e-10
    assert info["norm_sq_rel_error"] < 1e-10
    assert info["eps"] == pytest.approx(0.25 - 1 / (4 * n * n))


@pytest.mark.parametrize("D,L,N", [(1, 0, 2), (1, 1, 5), (3, 0, 4), (2, 2, 6)])
def test_oscillator_intertwining(D, L, N):
    sp = susy.superpotential("oscillator", D, L)
    info = susy.intertwining_check(sp, oscillator_state(OscillatorQN(D, N, L)))
    assert info["shape_error"] < 1e-12
    assert info["eps"] == pytest.approx(2.0 * (N - L))
    assert info["constant_sq_rel_error"] < 1e-10


def test_degeneracies():
    for n in range(2, 8):
        assert susy.susy_energy_coulomb(3, n, 0) == susy.susy_energy_coulomb(3, n, 1, tier=1)
    for N in range(2, 12, 2):
        assert susy.susy_energy_oscillator(3, N, 0) == susy.susy_energy_oscillator(3, N - 1, 1, tier=1)
    assert susy.susy_energy_coulomb(3, 1, 0) == 0.0
    assert susy.susy_energy_oscillator(5, 2, 2) == 0.0


@pytest.mark.parametrize("tier", [1, 2])
def test_tier_residuals(tier):
    st = susy.fermionic_state("coulomb", 3, 4, tier, tier)
    op = susy.tier_operator("coulomb", 3, 0, tier, susy.susy_energy_coulomb(3, 4, tier, tier))
    assert residual_scan(op, st, standard_grid(st)).max_rel < 1e-10
    st = susy.fermionic_state("oscillator", 1, 2 + tier, tier, tier)
    op = susy.tier_operator("oscillator", 1, 0, tier, susy.susy_energy_oscillator(1, 2 + tier, tier, tier))
    assert residual_scan(op, st, standard_grid(st)).max_rel < 1e-10


def test_parity_mixing_rejected():
    with pytest.raises(DomainError):
        susy.superpotential("oscillator", 1, 2)
    sp = susy.superpotential("oscillator", 1, 0)
    with pytest.raises(DomainError):
        susy.ladder_down(sp, oscillator_state(OscillatorQN(1, 1, 1)))


def test_stack_correspondence_and_errors():
    assert susy.stack_correspondence("coulomb")(2, 0) == (3, 1)
    assert susy.stack_correspondence("oscillator", "second")(2, 0) == (4, 2)
    with pytest.raises(DomainError):
        susy.stack_correspondence("coulomb", "sideways")
    with pytest.raises(DomainError):
        susy.fermionic_state("coulomb", 3, 3, 0, 1)
    with pytest.raises(DomainError):
        susy.superpotential("helium", 3, 0)
    assert susy.sector_name(2) == "second fermionic"
