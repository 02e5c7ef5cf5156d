"""Quantum-defect deformations of the Coulomb and oscillator systems.

A Coulomb profile assigns (i, delta) to each l plus a dimension shift j;
an oscillator profile assigns (I, Delta) to each L plus a shift J. The
deformed states are the ordinary closed forms evaluated at starred,
generally non-integer, quantum numbers:

    d* = d + j,  n* = n + i - delta,  l* = l + i - delta,  a = i - delta + j/2
    D* = D + J,  N* = N + I - Delta,  L* = L + I - Delta,  A = I - Delta + J/2

Two operator forms are offered. ``*_veff_operator`` adds the literal
effective potential (n- or N-dependent constant plus barrier shift) and
carries the eigenvalue that potential actually produces. ``sqdt_*_operator``
adds only the barrier shift (and 2A for the oscillator) so that the
eigenvalues are the Rydberg-type values -1/(4(n+gamma+a)^2) and
2N + 2Gamma + 4A + 3.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import DefectRangeError, DomainError
from .systems import (
    UNIT_SCALES,
    PhysicalScales,
    RadialOperator,
    RadialState,
    coulomb_potential,
    coulomb_radial,
    oscillator_potential,
    oscillator_radial,
)

INTEGER_TOL = 1e-12


def _rows_tuple(rows, label):
    if isinstance(rows, dict):
        rows = [(k, *v) for k, v in rows.items()]
    out = []
    seen = set()
    for row in rows:
        if len(row) != 3:
            raise DomainError(
                f"{label} rows need exactly three columns; defects depending on the "
                f"principal quantum number are not supported"
            )
        ang, count, defect = row
        if int(ang) != ang or ang < 0:
            raise DomainError(f"{label} angular momentum must be a nonnegative integer, got {ang}")
        if int(count) != count or count < 0:
            raise DomainError(f"{label} level count must be a nonnegative integer, got {count}")
        if ang in seen:
            raise DomainError(f"{label} row for angular momentum {ang} given twice")
        seen.add(ang)
        out.append((int(ang), int(count), float(defect)))
    return tuple(sorted(out))


@dataclass(frozen=True)
class CoulombDefectProfile:
    """Rows (l, i, delta); l values not listed use ``tail``."""

    rows: tuple = ()
    j: int = 0
    tail: tuple = (0, 0.0)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "rows", _rows_tuple(self.rows, "Coulomb profile"))
        if int(self.j) != self.j:
            raise DomainError(f"dimension shift j must be an integer, got {self.j}")

    def defect(self, l: int) -> tuple[int, float]:
        for ang, i, delta in self.rows:
            if ang == l:
                return i, delta
        return int(self.tail[0]), float(self.tail[1])


@dataclass(frozen=True)
class OscillatorDefectProfile:
    """Rows (L, I, Delta); L values not listed use ``tail``."""

    rows: tuple = ()
    J: int = 0
    tail: tuple = (0, 0.0)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "rows", _rows_tuple(self.rows, "oscillator profile"))
        if int(self.J) != self.J:
            raise DomainError(f"dimension shift J must be an integer, got {self.J}")

    def defect(self, L: int) -> tuple[int, float]:
        for ang, I, delta in self.rows:
            if ang == L:
                return I, delta
        return int(self.tail[0]), float(self.tail[1])


ZERO_COULOMB = CoulombDefectProfile(name="exact")
ZERO_OSCILLATOR = OscillatorDefectProfile(name="exact")

# Sodium valence electron: two filled s levels and one filled p level
# below n_s = 3, defects from the measured Rydberg series.
SODIUM = CoulombDefectProfile(
    rows=((0, 2, 1.35), (1, 1, 0.859), (2, 0, 0.01), (3, 0, 0.00)),
    j=0,
    tail=(0, 0.0),
    name="sodium",
)

PRESETS = {"sodium": SODIUM, "exact": ZERO_COULOMB}


@dataclass(frozen=True)
class StarredQN:
    system: str
    dim: int
    n: int
    l: int
    dim_star: float
    n_star: float
    l_star: float
    n_s: int
    shift: float          # a for Coulomb, A for the oscillator

    @property
    def gamma_star(self) -> float:
        return (self.dim_star - 3) / 2

    def to_dict(self):
        key = "a" if self.system == "coulomb" else "A"
        return {
            "system": self.system,
            "dim": self.dim, "n": self.n, "l": self.l,
            "dim_star": self.dim_star, "n_star": self.n_star, "l_star": self.l_star,
            "n_s": self.n_s, key: self.shift,
        }


def coulomb_starred(profile: CoulombDefectProfile, d: int, n: int, l: int) -> StarredQN:
    if int(d) != d or d < 2:
        raise DomainError(f"Coulomb dimension must be an integer >= 2, got {d}")
    if int(l) != l or l < 0:
        raise DomainError(f"angular momentum must be a nonnegative integer, got {l}")
    if int(n) != n or n < l + 1:
        raise DomainError(f"need integer n >= l+1, got n={n}, l={l}")
    i, delta = profile.defect(l)
    j = profile.j
    if not j > 1 - d:
        raise DomainError(f"dimension shift needs j > 1-d, got j={j}, d={d}")
    gamma = (d - 3) / 2
    bound = l + gamma + 1 + j / 2
    if not delta - i < bound:
        raise DefectRangeError(
            f"delta - i < l + gamma + 1 + j/2 violated: {delta - i:g} >= {bound:g} (l={l})"
        )
    return StarredQN("coulomb", d, n, l, d + j, n + i - delta, l + i - delta, n + i,
                     i - delta + j / 2)


def oscillator_starred(profile: OscillatorDefectProfile, D: int, N: int, L: int) -> StarredQN:
    if int(D) != D or D < 1:
        raise DomainError(f"oscillator dimension must be an integer >= 1, got {D}")
    if int(L) != L or L < 0:
        raise DomainError(f"angular momentum must be a nonnegative integer, got {L}")
    if D == 1 and L not in (0, 1):
        raise DomainError("for D=1 the only possibilities are L=0 and L=1")
    if int(N) != N or N < L or (N - L) % 2:
        raise DomainError(f"need N >= L with N-L even, got N={N}, L={L}")
    I, delta = profile.defect(L)
    J = profile.J
    if D + J < 1:
        raise DomainError(f"shifted dimension D+J must be >= 1, got {D + J}")
    Gamma = (D - 3) / 2
    bound = L + Gamma + 1.5 + J / 2
    if not delta - I < bound:
        raise DefectRangeError(
            f"Delta - I < L + Gamma + 3/2 + J/2 violated: {delta - I:g} >= {bound:g} (L={L})"
        )
    return StarredQN("oscillator", D, N, L, D + J, N + I - delta, L + I - delta, N + 2 * I,
                     I - delta + J / 2)


def _barrier_shift(base_shifted: float, star_shifted: float):
    strength = star_shifted * (star_shifted + 1) - base_shifted * (base_shifted + 1)
    return lambda x: strength / np.asarray(x, dtype=float) ** 2


def coulomb_effective_potential(profile: CoulombDefectProfile, d: int, n: int, l: int, y):
    """The effective potential exactly as written for the Coulomb SQDT.

    Constant (nu^2 - nu*^2) / (4 nu^2 nu*^2) with nu = n+gamma, nu* = n*+gamma*,
    plus the barrier shift from l+gamma to l*+gamma*.
    """
    q = coulomb_starred(profile, d, n, l)
    nu = n + (d - 3) / 2
    nu_star = q.n_star + q.gamma_star
    const = (nu**2 - nu_star**2) / (4 * nu**2 * nu_star**2)
    return const + _barrier_shift(l + (d - 3) / 2, q.l_star + q.gamma_star)(y)


def oscillator_effective_potential(profile: OscillatorDefectProfile, D: int, N: int, L: int, Y):
    """The effective potential exactly as written for the oscillator SQDT:
    2(N - N* + Gamma - Gamma*) plus the barrier shift."""
    q = oscillator_starred(profile, D, N, L)
    Gamma = (D - 3) / 2
    const = 2 * (N - q.n_star + Gamma - q.gamma_star)
    return const + _barrier_shift(L + Gamma, q.l_star + q.gamma_star)(Y)


def sqdt_coulomb_energy(profile: CoulombDefectProfile, d: int, n: int, l: int) -> float:
    """-1/(4 (n + gamma + a)^2)."""
    q = coulomb_starred(profile, d, n, l)
    return -1.0 / (4 * (n + (d - 3) / 2 + q.shift) ** 2)


def sqdt_oscillator_energy(profile: OscillatorDefectProfile, D: int, N: int, L: int) -> float:
    """2N + 2Gamma + 4A + 3."""
    q = oscillator_starred(profile, D, N, L)
    return 2.0 * N + (D - 3) + 4 * q.shift + 3


def sqdt_coulomb_state(profile: CoulombDefectProfile, d: int, n: int, l: int,
                       scales: PhysicalScales = UNIT_SCALES) -> RadialState:
    q = coulomb_starred(profile, d, n, l)
    return coulomb_radial(q.dim_star, q.n_star, q.l_star, scales,
                          label=f"w*[d*={q.dim_star:g},n*={q.n_star:g},l*={q.l_star:g}]")


def sqdt_oscillator_state(profile: OscillatorDefectProfile, D: int, N: int, L: int,
                          scales: PhysicalScales = UNIT_SCALES) -> RadialState:
    q = oscillator_starred(profile, D, N, L)
    return oscillator_radial(q.dim_star, q.n_star, q.l_star, scales,
                             label=f"W*[D*={q.dim_star:g},N*={q.n_star:g},L*={q.l_star:g}]")


def sqdt_coulomb_operator(profile: CoulombDefectProfile, d: int, n: int, l: int) -> RadialOperator:
    """Coulomb equation with the barrier moved to l*+gamma*, at the Rydberg-type eigenvalue."""
    q = coulomb_starred(profile, d, n, l)
    base = coulomb_potential(d, l)
    shift = _barrier_shift(l + (d - 3) / 2, q.l_star + q.gamma_star)
    return RadialOperator(lambda y: base(y) + shift(y), sqdt_coulomb_energy(profile, d, n, l),
                          f"sqdt coulomb d={d} l={l}")


def sqdt_oscillator_operator(profile: OscillatorDefectProfile, D: int, N: int, L: int) -> RadialOperator:
    """Oscillator equation with barrier moved to L*+Gamma* plus the constant 2A,
    at eigenvalue 2N + 2Gamma + 4A + 3."""
    q = oscillator_starred(profile, D, N, L)
    base = oscillator_potential(D, L)
    shift = _barrier_shift(L + (D - 3) / 2, q.l_star + q.gamma_star)
    const = 2 * q.shift
    return RadialOperator(lambda Y: base(Y) + shift(Y) + const,
                          sqdt_oscillator_energy(profile, D, N, L), f"sqdt oscillator D={D} L={L}")


def coulomb_veff_operator(profile: CoulombDefectProfile, d: int, n: int, l: int) -> RadialOperator:
    """Base equation plus the literal effective potential. Its eigenvalue for the
    starred state is the undeformed -1/(4(n+gamma)^2)."""
    base = coulomb_potential(d, l)
    energy = -1.0 / (4 * (n + (d - 3) / 2) ** 2)
    return RadialOperator(
        lambda y: base(y) + coulomb_effective_potential(profile, d, n, l, y), energy,
        f"coulomb + v_eff d={d} n={n} l={l}",
    )


def oscillator_veff_operator(profile: OscillatorDefectProfile, D: int, N: int, L: int) -> RadialOperator:
    """Base equation plus the literal effective potential; eigenvalue 2N + 2Gamma + 3."""
    base = oscillator_potential(D, L)
    energy = 2.0 * N + (D - 3) + 3
    return RadialOperator(
        lambda Y: base(Y) + oscillator_effective_potential(profile, D, N, L, Y), energy,
        f"oscillator + V_eff D={D} N={N} L={L}",
    )


@dataclass(frozen=True)
class SectorLabel:
    tier: int

    @property
    def name(self) -> str:
        return {0: "bosonic", 1: "fermionic", 2: "second fermionic"}.get(self.tier, f"tier {self.tier}")


def sector_classifier(value: float):
    """Nonnegative integer a (or A) names a SUSY tier; anything else is 'deformed'."""
    nearest = round(value)
    if abs(value - nearest) <= INTEGER_TOL and nearest >= 0:
        return SectorLabel(int(nearest))
    return "deformed"


def coulomb_stack(profile: CoulombDefectProfile, d: int, l: int, count: int):
    """First `count` levels of a fixed-l SQDT stack as (n, n_s, energy, state)."""
    rows = []
    for n in range(l + 1, l + 1 + count):
        q = coulomb_starred(profile, d, n, l)
        rows.append((n, q.n_s, sqdt_coulomb_energy(profile, d, n, l), sqdt_coulomb_state(profile, d, n, l)))
    return rows


def oscillator_stack(profile: OscillatorDefectProfile, D: int, L: int, count: int):
    rows = []
    for k in range(count):
        N = L + 2 * k
        q = oscillator_starred(profile, D, N, L)
        rows.append((N, q.n_s, sqdt_oscillator_energy(profile, D, N, L),
                     sqdt_oscillator_state(profile, D, N, L)))
    return rows


def boundary_probe(profile_row: tuple, d: int, l: int, gaps=(0.3, 0.1, 0.03), j: int = 0):
    """Weighted normalization integrals of the stack's ground level near the range edge.

    ``profile_row`` is (i, _); delta is set to i + bound - gap for each gap,
    where bound = l + gamma + 1 + j/2. Returns, per gap, the integral of
    x^alpha* e^(-x) over (0, inf) with alpha* = 2 l* + 2 gamma* + 1, which is
    the measure the starred Laguerre functions are orthonormal against. It
    grows without bound as alpha* -> -1, i.e. as the gap closes.
    """
    i = profile_row[0]
    gamma = (d - 3) / 2
    bound = l + gamma + 1 + j / 2
    values = []
    for gap in gaps:
        q = coulomb_starred(CoulombDefectProfile(((l, i, i + bound - gap),), j=j), d, l + 1, l)
        alpha = 2 * q.l_star + 2 * q.gamma_star + 1
        head, _ = quad(lambda x: x**alpha * np.exp(-x), 0.0, 1.0, limit=200)
        tail, _ = quad(lambda x: x**alpha * np.exp(-x), 1.0, np.inf, limit=200)
        values.append(head + tail)
    return values
