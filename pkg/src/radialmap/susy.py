"""Supersymmetric structure at fixed angular momentum.

Coulomb: u(y) = y/(2k) - k ln y with k = l + gamma + 1.
Oscillator: U(Y) = Y^2/2 - k ln Y with k = L + Gamma + 1.

The ladder operator is the real form a = d/dx + u'. Partner potentials are
v+ = u'^2 - u'' (bosonic) and v- = u'^2 + u'' (fermionic). Energies are
measured in the SUSY gauge where the bosonic ground state sits at zero.
Tier q means the q-th iterated partner (0 bosonic, 1 fermionic, 2 second
fermionic); it is built by shifting the angular momentum, not by
composing operators.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import verify
from .errors import DomainError
from .systems import (
    RadialOperator,
    RadialState,
    centrifugal,
    coulomb_radial,
    oscillator_radial,
)

SECTOR_NAMES = {0: "bosonic", 1: "fermionic", 2: "second fermionic"}


def sector_name(tier: int) -> str:
    return SECTOR_NAMES.get(tier, f"tier {tier}")


def _check_sector(system: str, dim, l, base: bool = True) -> None:
    if system == "coulomb":
        if dim < 2:
            raise DomainError(f"Coulomb dimension must be >= 2, got {dim}")
    elif system == "oscillator":
        if dim < 1:
            raise DomainError(f"oscillator dimension must be >= 1, got {dim}")
        if base and dim == 1 and l not in (0, 1):
            # Each parity substack carries its own supersymmetry.
            raise DomainError("for D=1 a superpotential exists only for L=0 or L=1")
    else:
        raise DomainError(f"unknown system {system!r}")
    if l < 0 or int(l) != l:
        raise DomainError(f"angular momentum must be a nonnegative integer, got {l}")


@dataclass(frozen=True)
class Superpotential:
    system: str
    dim: int
    l: int

    def __post_init__(self):
        _check_sector(self.system, self.dim, self.l, base=False)

    @property
    def kappa(self) -> float:
        return self.l + (self.dim - 3) / 2 + 1

    def u(self, x):
        x = np.asarray(x, dtype=float)
        k = self.kappa
        if self.system == "coulomb":
            return x / (2 * k) - k * np.log(x)
        return 0.5 * x**2 - k * np.log(x)

    def du(self, x):
        x = np.asarray(x, dtype=float)
        k = self.kappa
        if self.system == "coulomb":
            return 1 / (2 * k) - k / x
        return x - k / x

    def d2u(self, x):
        x = np.asarray(x, dtype=float)
        k = self.kappa
        if self.system == "coulomb":
            return k / x**2
        return 1.0 + k / x**2

    def d3u(self, x):
        return -2 * self.kappa / np.asarray(x, dtype=float) ** 3

    def partner_potentials(self):
        v_plus = lambda x: self.du(x) ** 2 - self.d2u(x)
        v_minus = lambda x: self.du(x) ** 2 + self.d2u(x)
        return v_plus, v_minus

    def energy_shift(self) -> float:
        """Constant added to the physical energy to land in the SUSY gauge."""
        k = self.kappa
        if self.system == "coulomb":
            return 1.0 / (4 * k * k)
        return -(2 * k + 1)

    def ground_state(self) -> RadialState:
        """The nodeless bosonic ground state; proportional to exp(-u)."""
        if self.system == "coulomb":
            return coulomb_radial(self.dim, self.l + 1, self.l)
        return oscillator_radial(self.dim, self.l, self.l)


def superpotential(system: str, dim: int, l: int) -> Superpotential:
    """Superpotential of the bosonic stack at angular momentum l."""
    _check_sector(system, dim, l)
    return Superpotential(system, dim, l)


def tier_superpotential(system: str, dim: int, l: int, tier: int) -> Superpotential:
    """Superpotential taking tier to tier+1 over the base stack l.

    The D=1 parity rule applies to the base stack only; iterated partners
    live at higher angular momentum.
    """
    _check_sector(system, dim, l)
    return Superpotential(system, dim, l + tier)


def susy_energy_coulomb(d: int, n: int, l: int, tier: int = 0) -> float:
    """SUSY-gauge energy of w_{d,n,l} viewed as a tier-`tier` state.

    The base bosonic stack has angular momentum l - tier.
    """
    base = l - tier
    if tier < 0 or base < 0:
        raise DomainError(f"tier {tier} needs l >= tier, got l={l}")
    if n < l + 1:
        raise DomainError(f"need n >= l+1, got n={n}, l={l}")
    gamma = (d - 3) / 2
    return 1.0 / (4 * (base + 1 + gamma) ** 2) - 1.0 / (4 * (n + gamma) ** 2)


def susy_energy_oscillator(D: int, N: int, L: int, tier: int = 0) -> float:
    """SUSY-gauge energy 2(N - L) + 4 tier of W_{D,N,L} viewed as a tier-`tier` state."""
    base = L - tier
    if tier < 0 or base < 0:
        raise DomainError(f"tier {tier} needs L >= tier, got L={L}")
    if N < L or (N - L) % 2:
        raise DomainError(f"need N >= L with N-L even, got N={N}, L={L}")
    return 2.0 * (N - L) + 4.0 * tier


def tier_operator(system: str, dim: int, l: int, tier: int, energy: float) -> RadialOperator:
    """Hamiltonian of tier `tier` over the base stack l, in the SUSY gauge, minus `energy`.

    Coulomb: barrier(l+q) - 1/y + 1/(4 k^2); oscillator: Y^2 + barrier(L+q) - (2k+1) + 2q,
    with k the base kappa.
    """
    sp = Superpotential(system, dim, l)
    shifted = centrifugal(l + tier + (dim - 3) / 2)
    shift = sp.energy_shift()
    if system == "coulomb":
        pot = lambda y: shifted(y) - 1.0 / np.asarray(y, dtype=float) + shift
    else:
        pot = lambda Y: shifted(Y) + np.asarray(Y, dtype=float) ** 2 + shift + 2.0 * tier
    return RadialOperator(pot, energy, f"{system} {sector_name(tier)} l={l}")


def fermionic_state(system: str, dim: int, n: int, l: int, tier: int = 1) -> RadialState:
    """Tier-`tier` partner state at primed quantum numbers (n, l); the stack base is l - tier.

    Same closed form as the bosonic functions. For D=1 the primed angular
    momentum may exceed 1 since it labels a partner stack, not a parity.
    """
    base = l - tier
    if tier < 1 or base < 0:
        raise DomainError(f"partner tier {tier} needs l >= tier, got l={l}")
    _check_sector(system, dim, base)
    if system == "coulomb":
        if n < l + 1:
            raise DomainError(f"need n' >= l'+1, got n'={n}, l'={l}")
        state = coulomb_radial(dim, n, l, label=f"w{'-' * tier}[d={dim},n={n},l={l}]")
    else:
        if n < l or (n - l) % 2:
            raise DomainError(f"need N' >= L' with N'-L' even, got N'={n}, L'={l}")
        state = oscillator_radial(dim, n, l, label=f"W{'-' * tier}[D={dim},N={n},L={l}]")
    return state


def second_fermionic_state(system: str, dim: int, n: int, l: int) -> RadialState:
    return fermionic_state(system, dim, n, l, tier=2)


def stack_correspondence(system: str, direction: str = "next"):
    """Quantum-number relabeling between stacks at fixed shift.

    Coulomb 'next' (bosonic -> fermionic, or any tier to the next):
    (n, l) -> (n+1, l+1). Oscillator 'next': (N, L) -> (N+1, L+1);
    oscillator 'second': (N, L) -> (N+2, L+2).
    """
    steps = {"next": 1, "second": 2}
    if direction not in steps:
        raise DomainError(f"unknown direction {direction!r}")
    step = steps[direction]
    if system not in ("coulomb", "oscillator"):
        raise DomainError(f"unknown system {system!r}")
    return lambda n, l: (n + step, l + step)


@dataclass(frozen=True)
class LadderImage:
    state: RadialState
    norm: float


def ladder_down(sp: Superpotential, state: RadialState, order: int = verify.DEFAULT_ORDER) -> LadderImage:
    """Apply a = d/dx + u' to a bosonic eigenstate of sp.

    The result is returned unnormalized; its quadrature norm is reported
    separately (its square should equal the SUSY eigenvalue). The third
    derivative needed for the image's second derivative comes from the
    bosonic equation w'' = (v+ - eps) w.
    """
    if state.system != sp.system or state.dim != sp.dim or state.l != sp.l:
        raise DomainError(
            f"state {state.label} is not in the bosonic sector of the "
            f"{sp.system} superpotential (dim={sp.dim}, l={sp.l})"
        )
    v_plus, _ = sp.partner_potentials()
    eps = state.energy + sp.energy_shift()

    def evaluate(x):
        w, w1, w2 = state.derivs(x)
        u1, u2, u3 = sp.du(x), sp.d2u(x), sp.d3u(x)
        vp1 = 2 * u1 * u2 - u3
        w3 = vp1 * w + (v_plus(x) - eps) * w1
        g = w1 + u1 * w
        g1 = w2 + u2 * w + u1 * w1
        g2 = w3 + u3 * w + 2 * u2 * w1 + u1 * w2
        return g, g1, g2

    image = RadialState(
        system=state.system,
        dim=state.dim,
        n=state.n,
        l=state.l,
        energy=state.energy,
        # u' cancels the leading y^(p-1) term of w', so the image keeps power p.
        power=state.power,
        tail=state.tail,
        span=state.span,
        evaluator=evaluate,
        label=f"a {state.label}",
    )
    return LadderImage(image, verify.norm(image, verify.pair_rule(image, image, order)))


def ladder_target(sp: Superpotential, state: RadialState) -> RadialState:
    """The normalized partner eigenstate that a maps `state` onto."""
    if sp.system == "coulomb":
        return coulomb_radial(sp.dim, state.n, sp.l + 1)
    return oscillator_radial(sp.dim, state.n - 1, sp.l + 1)


def ground_annihilation(sp: Superpotential, grid=None) -> float:
    """sup |a w0| / sup |w0| on the ground state's standard grid."""
    ground = sp.ground_state()
    grid = np.geomspace(*ground.span, 200) if grid is None else grid
    w, w1, _ = ground.derivs(grid)
    return float(np.max(np.abs(w1 + sp.du(grid) * w)) / np.max(np.abs(w)))


def intertwining_check(sp: Superpotential, state: RadialState, grid=None) -> dict:
    """Compare a w with its partner eigenstate; returns shape error and constant^2 vs eps."""
    grid = np.geomspace(*state.span, 200) if grid is None else grid
    image = ladder_down(sp, state)
    target = ladder_target(sp, state)
    c, err = verify.proportionality_error(target(grid), image.state(grid))
    eps = state.energy + sp.energy_shift()
    return {
        "state": state.label,
        "partner": target.label,
        "shape_error": err,
        "constant": abs(c),
        "norm": image.norm,
        "eps": eps,
        "constant_sq_rel_error": abs(abs(c) ** 2 - eps) / max(abs(eps), verify.RELATIVE_FLOOR),
        "norm_sq_rel_error": abs(image.norm**2 - eps) / max(abs(eps), verify.RELATIVE_FLOOR),
    }


def exp_minus_u_error(sp: Superpotential, grid=None) -> float:
    """Shape mismatch between exp(-u) and the ground state."""
    ground = sp.ground_state()
    grid = np.geomspace(*ground.span, 200) if grid is None else grid
    _, err = verify.proportionality_error(ground(grid), np.exp(-sp.u(grid)))
    return err


__all__ = [
    "Superpotential",
    "LadderImage",
    "superpotential",
    "tier_superpotential",
    "susy_energy_coulomb",
    "susy_energy_oscillator",
    "tier_operator",
    "fermionic_state",
    "second_fermionic_state",
    "stack_correspondence",
    "ladder_down",
    "ladder_target",
    "ground_annihilation",
    "intertwining_check",
    "exp_minus_u_error",
    "sector_name",
]
