"""Continuum Coulomb waves, inverted-oscillator waves, and the map between them.

Coulomb, E > 0, k = sqrt(E/E0), q = +1 (attractive) or -1 (repulsive):

    w(y) = y^p e^(i s k y) M(p - i s q/(2k), 2p, -2 i s k y),  p = l + gamma + 1

Inverted oscillator, potential -Y^2:

    W(Y) = Y^P e^(i s Y^2/2) M(P'/2 - i s F/4, P', -i s Y^2),  P = L + Gamma + 1, P' = P + 1/2

s = +1 is the outgoing wave, s = -1 the incoming one. All leading
coefficients are one; only proportionality between waves is meaningful.
The map is Y^2 = 2 y k, D = 2d - 2 - 2 lambda, L = 2l + lambda and
F/F0 = 2/k (attractive) or -2/k (repulsive).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import verify
from .errors import DomainError
from .specfun import HYP1F1_MAX_ABS_Z, hyp1f1_derivs
from .systems import RadialOperator, centrifugal, coulomb_radial, oscillator_radial

COULOMB_Y_MAX = 20.0
OSCILLATOR_Y_MAX = 6.0
GRID_LO = 0.1
GRID_POINTS = 200
# Keep |z| strictly inside the 1F1 budget.
Z_MARGIN = 0.98


@dataclass(frozen=True)
class ContinuumWave:
    system: str
    dim: float
    l: float
    energy: complex
    sign: int
    repulsive: bool
    span: tuple
    evaluator: Callable = field(repr=False, compare=False)
    label: str = ""

    def derivs(self, x):
        return self.evaluator(np.asarray(x, dtype=float))

    def __call__(self, x):
        return self.derivs(x)[0]


def _check_sign(sign):
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 (outgoing) or -1 (incoming), got {sign}")


def _coulomb_wave(d, k: complex, l, sign: int, charge: int, label: str) -> ContinuumWave:
    p = l + (d - 3) / 2 + 1
    a = p - 1j * sign * charge / (2 * k)
    b = 2 * p
    c = -2j * sign * k
    ik = 1j * sign * k

    def evaluate(y):
        f = np.exp(p * np.log(y) + ik * y)
        q = p / y + ik
        f1 = f * q
        f2 = f * (q * q - p / y**2)
        m, m1, m2 = hyp1f1_derivs(a, b, c * y)
        g1, g2 = c * m1, c * c * m2
        return f * m, f1 * m + f * g1, f2 * m + 2 * f1 * g1 + f * g2

    # |z| = 2|k| y must stay inside the 1F1 budget.
    y_max = min(COULOMB_Y_MAX, Z_MARGIN * HYP1F1_MAX_ABS_Z / (2 * abs(k)))
    return ContinuumWave("coulomb", d, l, k * k, sign, charge < 0, (GRID_LO, y_max), evaluate, label)


def coulomb_continuum_wave(d: int, E: float, l: int, sign: int = 1, repulsive: bool = False) -> ContinuumWave:
    """Continuum Coulomb wave at energy E/E0 > 0."""
    if not E > 0:
        raise DomainError(f"continuum waves need E > 0, got {E}; use the bound-state constructors")
    if d < 2:
        raise DomainError(f"Coulomb dimension must be >= 2, got {d}")
    _check_sign(sign)
    k = math.sqrt(E)
    kind = "repulsive" if repulsive else "attractive"
    return _coulomb_wave(d, k, l, sign, -1 if repulsive else 1, f"coulomb {kind} d={d} E={E:g} l={l}")


def continued_coulomb_wave(d: int, n: int, l: int) -> ContinuumWave:
    """The outgoing closed form continued to E = -E0/(4(n+gamma)^2), i.e. k = i/(2(n+gamma)).

    The 1F1 series then terminates and the wave is a bound state.
    """
    nu = n + (d - 3) / 2
    return _coulomb_wave(d, 1j / (2 * nu), l, 1, 1, f"coulomb continued d={d} n={n} l={l}")


def coulomb_continuum_operator(d: int, l: int, E: float, repulsive: bool = False) -> RadialOperator:
    barrier = centrifugal(l + (d - 3) / 2)
    charge = -1.0 if repulsive else 1.0
    return RadialOperator(lambda y: barrier(y) - charge / np.asarray(y, dtype=float), E,
                          f"coulomb continuum d={d} l={l}")


def _inverted_closed_form(P: float, F: complex, Y2, sign: int):
    """Value only, at a possibly complex Y^2; used for the analytic-continuation check."""
    b = P + 0.5
    a = b / 2 - 1j * sign * F / 4
    m, _, _ = hyp1f1_derivs(a, b, -1j * sign * Y2)
    return Y2 ** (P / 2) * np.exp(1j * sign * Y2 / 2) * m


def inverted_oscillator_wave(D: int, F: float, L: int, sign: int = 1) -> ContinuumWave:
    """Solution of -W'' + [(L+Gamma)(L+Gamma+1)/Y^2 - Y^2 - F] W = 0, regular at the origin."""
    if D < 1:
        raise DomainError(f"oscillator dimension must be >= 1, got {D}")
    _check_sign(sign)
    P = L + (D - 3) / 2 + 1
    b = P + 0.5
    a = b / 2 - 1j * sign * F / 4
    iy = 1j * sign

    def evaluate(Y):
        f = np.exp(P * np.log(Y) + 0.5 * iy * Y**2)
        q = P / Y + iy * Y
        f1 = f * q
        f2 = f * (q * q - P / Y**2 + iy)
        m, m1, m2 = hyp1f1_derivs(a, b, -iy * Y**2)
        z1 = -2 * iy * Y
        g1 = m1 * z1
        g2 = m2 * z1**2 + m1 * (-2 * iy)
        return f * m, f1 * m + f * g1, f2 * m + 2 * f1 * g1 + f * g2

    y_max = min(OSCILLATOR_Y_MAX, math.sqrt(Z_MARGIN * HYP1F1_MAX_ABS_Z))
    return ContinuumWave("inverted", D, L, F, sign, F < 0, (GRID_LO, y_max), evaluate,
                         f"inverted oscillator D={D} F={F:g} L={L}")


def inverted_oscillator_operator(D: int, L: int, F: float) -> RadialOperator:
    barrier = centrifugal(L + (D - 3) / 2)
    return RadialOperator(lambda Y: barrier(Y) - np.asarray(Y, dtype=float) ** 2, F,
                          f"inverted oscillator D={D} L={L}")


def continuation_check(D: int, N: int, L: int, grid=None) -> tuple[complex, float]:
    """Evaluate the inverted closed form at Y^2 -> i X^2, F -> -i F_N and compare
    with the ordinary oscillator state at X. Returns (fitted constant, shape error)."""
    grid = np.linspace(0.2, 5.0, GRID_POINTS) if grid is None else np.asarray(grid, dtype=float)
    P = L + (D - 3) / 2 + 1
    F = 2 * N + (D - 3) + 3
    continued = _inverted_closed_form(P, -1j * F, 1j * grid**2, 1)
    return verify.proportionality_error(oscillator_radial(D, N, L)(grid), continued)


def transport_wave(wave: ContinuumWave, k: float, D: int, L: int, F: float) -> ContinuumWave:
    """Y -> Y^(-1/2) w(Y^2/(2k))."""
    s1c = 1.0 / k

    def evaluate(Y):
        s = Y**2 / (2 * k)
        w, w1, w2 = wave.derivs(s)
        s1 = Y * s1c
        h = Y**-0.5
        h1 = -0.5 * h / Y
        h2 = 0.75 * h / Y**2
        return (
            h * w,
            h1 * w + h * w1 * s1,
            h2 * w + 2 * h1 * w1 * s1 + h * (w2 * s1**2 + w1 * s1c),
        )

    y_max = min(OSCILLATOR_Y_MAX, math.sqrt(2 * k * wave.span[1]))
    return ContinuumWave("inverted", D, L, F, wave.sign, wave.repulsive, (GRID_LO, y_max), evaluate,
                         f"Y^-1/2 {wave.label}")


@dataclass
class ContinuumMapResult:
    d: int
    l: int
    E: float
    lam: int
    D: int
    L: int
    F: float
    ratio: complex
    ratio_error: float
    transported_residual: float
    target_residual: float
    source_residual: float
    transported: ContinuumWave = field(repr=False)
    target: ContinuumWave = field(repr=False)

    def to_dict(self):
        return {
            "d": self.d, "l": self.l, "E": self.E, "lambda": self.lam,
            "D": self.D, "L": self.L, "F": self.F,
            "ratio": [self.ratio.real, self.ratio.imag],
            "ratio_error": self.ratio_error,
            "transported_residual": self.transported_residual,
            "target_residual": self.target_residual,
            "source_residual": self.source_residual,
        }


def _relative_residual(op, wave, grid, values=None) -> float:
    f, f1, f2 = wave.derivs(grid) if values is None else values
    return float(np.max(np.abs(op(grid, f, f1, f2))) / np.max(np.abs(f)))


def continuum_map(d: int, E: float, l: int, lam: int, sign: int = 1, repulsive: bool = False,
                  grid=None) -> ContinuumMapResult:
    """Transport a continuum Coulomb wave onto the inverted oscillator."""
    if int(lam) != lam:
        raise DomainError(f"lambda must be an integer, got {lam}")
    D = 2 * d - 2 - 2 * lam
    L = 2 * l + lam
    if D < 2:
        raise DomainError(f"lambda={lam} gives D={D}; the quadratic map only reaches even D >= 2")
    if L < 0:
        raise DomainError(f"lambda={lam} makes L = 2l+lambda negative")
    wave = coulomb_continuum_wave(d, E, l, sign, repulsive)
    k = math.sqrt(E)
    F = (-2.0 if repulsive else 2.0) / k
    moved = transport_wave(wave, k, D, L, F)
    target = inverted_oscillator_wave(D, F, L, sign)
    grid = np.geomspace(*moved.span, GRID_POINTS) if grid is None else grid
    moved_vals = moved.derivs(grid)
    target_vals = target.derivs(grid)
    ratio, err = verify.proportionality_error(target_vals[0], moved_vals[0])
    op = inverted_oscillator_operator(D, L, F)
    ygrid = np.geomspace(*wave.span, GRID_POINTS)
    return ContinuumMapResult(
        d=d, l=l, E=E, lam=lam, D=D, L=L, F=F,
        ratio=ratio,
        ratio_error=err,
        transported_residual=_relative_residual(op, moved, grid, moved_vals),
        target_residual=_relative_residual(op, target, grid, target_vals),
        source_residual=_relative_residual(coulomb_continuum_operator(d, l, E, repulsive), wave, ygrid),
        transported=moved,
        target=target,
    )


def repulsive_map(d: int, E: float, l: int, lam: int, sign: int = 1, grid=None) -> ContinuumMapResult:
    """Same bookkeeping as continuum_map with F/F0 = -2 sqrt(E0/E)."""
    return continuum_map(d, E, l, lam, sign, repulsive=True, grid=grid)


def wave_residual(wave: ContinuumWave, grid=None) -> float:
    grid = np.geomspace(*wave.span, GRID_POINTS) if grid is None else grid
    if wave.system == "coulomb":
        op = coulomb_continuum_operator(wave.dim, wave.l, wave.energy, wave.repulsive)
    else:
        op = inverted_oscillator_operator(wave.dim, wave.l, wave.energy)
    return _relative_residual(op, wave, grid)
