"""Exact bound states of the radial Coulomb (d >= 2) and oscillator (D >= 1) problems.

Everything is dimensionless: radii are y = r/r0 and Y = R/R0, energies are
E/E0 and F/F0. The scaled radial functions w(y) and W(Y) already carry the
factor y^(gamma+1) (resp. Y^(Gamma+1)), so they are normalized with the
plain measure on the half line.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError
from .specfun import laguerre, log_gamma


@dataclass(frozen=True)
class PhysicalScales:
    r0: float = 1.0
    R0: float = 1.0
    E0: float = 1.0
    F0: float = 1.0

    def __post_init__(self):
        for name in ("r0", "R0", "E0", "F0"):
            if not getattr(self, name) > 0:
                raise DomainError(f"scale {name} must be positive")


UNIT_SCALES = PhysicalScales()


@dataclass(frozen=True)
class CoulombQN:
    d: int
    n: int
    l: int

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise DomainError(f"Coulomb dimension must be an integer >= 2, got {self.d}")
        if int(self.l) != self.l or self.l < 0:
            raise DomainError(f"angular momentum must be a nonnegative integer, got {self.l}")
        if int(self.n) != self.n or self.n < self.l + 1:
            raise DomainError(f"need integer n >= l+1, got n={self.n}, l={self.l}")

    @property
    def gamma(self) -> float:
        return (self.d - 3) / 2


@dataclass(frozen=True)
class OscillatorQN:
    D: int
    N: int
    L: int

    def __post_init__(self):
        if int(self.D) != self.D or self.D < 1:
            raise DomainError(f"oscillator dimension must be an integer >= 1, got {self.D}")
        if int(self.L) != self.L or self.L < 0:
            raise DomainError(f"angular momentum must be a nonnegative integer, got {self.L}")
        if self.D == 1 and self.L not in (0, 1):
            raise DomainError("for D=1 the only possibilities are L=0 (even) and L=1 (odd)")
        if int(self.N) != self.N or self.N < self.L or (self.N - self.L) % 2:
            raise DomainError(f"need N >= L with N-L even, got N={self.N}, L={self.L}")

    @property
    def Gamma(self) -> float:
        return (self.D - 3) / 2


@dataclass(frozen=True)
class RadialState:
    """A scaled radial function with analytic first and second derivatives.

    ``power`` and ``tail`` describe the behaviour at the origin (x**power)
    and at infinity (exp(-s x) for ``("exp", s)``, exp(-s x**2) for
    ``("gauss", s)``); the quadrature layer uses them to pick exact rules.
    """

    system: str
    dim: float
    n: float
    l: float
    energy: float
    power: float
    tail: tuple
    span: tuple
    evaluator: Callable = field(repr=False, compare=False)
    label: str = ""

    def derivs(self, x):
        """Return (value, first derivative, second derivative) at x > 0."""
        return self.evaluator(np.asarray(x, dtype=float))

    def __call__(self, x):
        value = self.derivs(x)[0]
        return float(value) if np.ndim(value) == 0 else value


def geometric_grid(lo: float, hi: float, num: int = 200) -> np.ndarray:
    return np.geomspace(lo, hi, num)


def standard_grid(state: RadialState, num: int = 200) -> np.ndarray:
    return geometric_grid(*state.span, num=num)


def coulomb_energy(qn: CoulombQN) -> float:
    """E/E0 = -1/(4 (n+gamma)^2)."""
    return -1.0 / (4.0 * (qn.n + qn.gamma) ** 2)


def oscillator_energy(qn: OscillatorQN) -> float:
    """F/F0 = 2N + 2 Gamma + 3."""
    return 2.0 * qn.N + 2.0 * qn.Gamma + 3.0


def coulomb_radial(d: float, n: float, l: float, scales: PhysicalScales = UNIT_SCALES,
                   label: str = "") -> RadialState:
    """Closed-form Coulomb function with possibly non-integer (n, l).

    Only n - l must be a positive integer (the Laguerre degree plus one).
    Used directly by the quantum-defect layer; ``coulomb_state`` is the
    validated entry point for integer quantum numbers.
    """
    gamma = (d - 3) / 2
    degree = n - l - 1
    if abs(degree - round(degree)) > 1e-9 or round(degree) < 0:
        raise DomainError(f"n - l - 1 must be a nonnegative integer, got {degree}")
    degree = int(round(degree))
    nu = n + gamma
    p = l + gamma + 1
    alpha = 2 * l + 2 * gamma + 1
    if not alpha > -1:
        raise DomainError(f"Laguerre parameter 2l+2gamma+1 = {alpha} must exceed -1")
    log_c = 0.5 * (
        log_gamma(degree + 1)
        - math.log(2.0)
        - d * math.log(scales.r0)
        - (alpha + 3) * math.log(nu)
        - log_gamma(degree + alpha + 1)
    )
    c = math.exp(log_c)
    s = 1.0 / (2.0 * nu)

    def evaluate(y):
        f = np.exp(p * np.log(y) - s * y)
        q = p / y - s
        f1 = f * q
        f2 = f * (q * q - p / y**2)
        lag = laguerre(degree, alpha, y / nu)
        g, g1, g2 = lag.value, lag.first_derivative / nu, lag.second_derivative / nu**2
        return c * f * g, c * (f1 * g + f * g1), c * (f2 * g + 2 * f1 * g1 + f * g2)

    return RadialState(
        system="coulomb",
        dim=d,
        n=n,
        l=l,
        energy=-1.0 / (4.0 * nu**2),
        power=p,
        tail=("exp", s),
        span=(1e-3, 40.0 * nu),
        evaluator=evaluate,
        label=label or f"w[d={d:g},n={n:g},l={l:g}]",
    )


def coulomb_state(qn: CoulombQN, scales: PhysicalScales = UNIT_SCALES) -> RadialState:
    """Normalized w_{d,n,l}(y)."""
    return coulomb_radial(qn.d, qn.n, qn.l, scales)


def oscillator_radial(D: float, N: float, L: float, scales: PhysicalScales = UNIT_SCALES,
                      label: str = "") -> RadialState:
    """Closed-form oscillator function with possibly non-integer (N, L).

    (N - L)/2 must be a nonnegative integer.
    """
    Gamma = (D - 3) / 2
    half = (N - L) / 2
    if abs(half - round(half)) > 1e-9 or round(half) < 0:
        raise DomainError(f"(N - L)/2 must be a nonnegative integer, got {half}")
    degree = int(round(half))
    P = L + Gamma + 1
    beta = L + Gamma + 0.5
    if not beta > -1:
        raise DomainError(f"Laguerre parameter L+Gamma+1/2 = {beta} must exceed -1")
    log_c = 0.5 * (
        math.log(2.0)
        + log_gamma(degree + 1)
        - D * math.log(scales.R0)
        - log_gamma(degree + beta + 1)
    )
    c = math.exp(log_c)

    def evaluate(Y):
        f = np.exp(P * np.log(Y) - 0.5 * Y**2) if P != 0 else np.exp(-0.5 * Y**2)
        q = P / Y - Y
        f1 = f * q
        f2 = f * (q * q - P / Y**2 - 1.0)
        lag = laguerre(degree, beta, Y**2)
        g = lag.value
        g1 = 2 * Y * lag.first_derivative
        g2 = 2 * lag.first_derivative + 4 * Y**2 * lag.second_derivative
        return c * f * g, c * (f1 * g + f * g1), c * (f2 * g + 2 * f1 * g1 + f * g2)

    return RadialState(
        system="oscillator",
        dim=D,
        n=N,
        l=L,
        energy=2.0 * N + 2.0 * Gamma + 3.0,
        power=P,
        tail=("gauss", 0.5),
        span=(1e-3, 8.0),
        evaluator=evaluate,
        label=label or f"W[D={D:g},N={N:g},L={L:g}]",
    )


def oscillator_state(qn: OscillatorQN, scales: PhysicalScales = UNIT_SCALES) -> RadialState:
    """Normalized W_{D,N,L}(Y), normalized on the half line (also for D=1)."""
    return oscillator_radial(qn.D, qn.N, qn.L, scales)


@dataclass(frozen=True)
class RadialOperator:
    """f -> -f'' + (V(x) - energy) f, evaluated pointwise from (f, f', f'')."""

    potential: Callable
    energy: float
    name: str = ""

    def __call__(self, x, f, fp, fpp):
        return -fpp + (self.potential(x) - self.energy) * f

    def apply(self, state, x):
        f, fp, fpp = state.derivs(x)
        return self(np.asarray(x, dtype=float), f, fp, fpp)


def centrifugal(shifted_l: float):
    """(s)(s+1)/x^2 with s = l + gamma (or L + Gamma)."""
    strength = shifted_l * (shifted_l + 1)
    return lambda x: strength / np.asarray(x, dtype=float) ** 2


def coulomb_potential(d: float, l: float):
    barrier = centrifugal(l + (d - 3) / 2)
    return lambda y: barrier(y) - 1.0 / np.asarray(y, dtype=float)


def oscillator_potential(D: float, L: float):
    barrier = centrifugal(L + (D - 3) / 2)
    return lambda Y: barrier(Y) + np.asarray(Y, dtype=float) ** 2


def coulomb_operator(qn: CoulombQN, energy: float) -> RadialOperator:
    return RadialOperator(coulomb_potential(qn.d, qn.l), energy, f"coulomb d={qn.d} l={qn.l}")


def oscillator_operator(qn: OscillatorQN, energy: float) -> RadialOperator:
    return RadialOperator(oscillator_potential(qn.D, qn.L), energy, f"oscillator D={qn.D} L={qn.L}")
