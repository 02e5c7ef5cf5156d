"""Quadratic maps taking radial Coulomb states to radial oscillator states.

Classic map at fixed integer lambda:

    Y^2 = y / (n + gamma),  D = 2d - 2 - 2 lambda,  N = 2n - 2 + lambda,  L = 2l + lambda
    W_{D,N,L}(Y) = K Y^(-1/2) w_{d,n,l}((n + gamma) Y^2),  K = (2n + d - 3) r0^(d/2) / R0^(d-1-lambda)

General map: the same with starred quantities on both sides. The oscillator
base numbers are always the classic ones above; the oscillator profile then
moves them to (D*, N*, L*). The two sides line up exactly when A = 2a, and
the energies satisfy F/F0 = 2 sqrt(E0/(-E)) + 4a.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from decimal import Decimal

import numpy as np

from . import verify
from .errors import ConsistencyError, DomainError
from .sqdt import (
    ZERO_COULOMB,
    ZERO_OSCILLATOR,
    CoulombDefectProfile,
    OscillatorDefectProfile,
    StarredQN,
    coulomb_starred,
    oscillator_starred,
    sqdt_coulomb_energy,
    sqdt_coulomb_state,
    sqdt_oscillator_energy,
    sqdt_oscillator_state,
)
from .systems import UNIT_SCALES, PhysicalScales, RadialState

POINTWISE_TOL = 1e-10
ENERGY_TOL = 1e-12
NORM_TOL = 1e-8
SHIFT_TOL = 1e-12
GRID_POINTS = 200

K_READING_NOTE = (
    "K uses the classic closed form with starred arguments: "
    "(2n*+d*-3) r0^(d*/2) / R0^(d*-1-(lambda-J/2+j))"
)


@dataclass(frozen=True)
class MapSpec:
    """A Coulomb family (d, n, l, profile) mapped with parameter lambda onto an oscillator family."""

    d: int
    n: int
    l: int
    lam: int
    coulomb_profile: CoulombDefectProfile = ZERO_COULOMB
    oscillator_profile: OscillatorDefectProfile = ZERO_OSCILLATOR

    def __post_init__(self):
        if int(self.lam) != self.lam:
            raise DomainError(f"lambda must be an integer, got {self.lam}")
        if self.base_L < 0:
            raise DomainError(f"lambda={self.lam} makes L = 2l+lambda negative (l={self.l})")
        if self.base_D < 2:
            raise DomainError(
                f"lambda={self.lam} gives base oscillator dimension {self.base_D}; "
                f"the quadratic map only reaches even D >= 2"
            )
        c = self.coulomb
        o = self.oscillator
        if abs(o.shift - 2 * c.shift) > SHIFT_TOL:
            raise ConsistencyError(
                f"A = {o.shift:g} but 2a = {2 * c.shift:g}; the map needs A = 2a "
                f"(I - Delta = 2(i - delta) + j - J/2)"
            )
        if o.l_star < -SHIFT_TOL:
            raise DomainError(f"mapped angular momentum L* = {o.l_star:g} is negative")
        if o.dim_star < 1:
            raise DomainError(f"mapped dimension D* = {o.dim_star:g} is below 1")

    @property
    def base_D(self) -> int:
        return 2 * self.d - 2 - 2 * self.lam

    @property
    def base_N(self) -> int:
        return 2 * self.n - 2 + self.lam

    @property
    def base_L(self) -> int:
        return 2 * self.l + self.lam

    @property
    def coulomb(self) -> StarredQN:
        return coulomb_starred(self.coulomb_profile, self.d, self.n, self.l)

    @property
    def oscillator(self) -> StarredQN:
        return oscillator_starred(self.oscillator_profile, self.base_D, self.base_N, self.base_L)

    def relation_residuals(self) -> dict:
        """The starred relations evaluated from the Coulomb side, minus the oscillator values."""
        c, o = self.coulomb, self.oscillator
        j, J = self.coulomb_profile.j, self.oscillator_profile.J
        return {
            "D*": (2 * c.dim_star - 2 - 2 * self.lam + J - 2 * j) - o.dim_star,
            "N*": (2 * c.n_star - 2 + self.lam + j - J / 2) - o.n_star,
            "L*": (2 * c.l_star + self.lam + j - J / 2) - o.l_star,
            "A-2a": o.shift - 2 * c.shift,
        }


def map_constant(spec: MapSpec, scales: PhysicalScales = UNIT_SCALES) -> float:
    c = spec.coulomb
    shift = spec.lam - spec.oscillator_profile.J / 2 + spec.coulomb_profile.j
    return (2 * c.n_star + c.dim_star - 3) * scales.r0 ** (c.dim_star / 2) / scales.R0 ** (
        c.dim_star - 1 - shift
    )


def transport(coulomb_state: RadialState, nu: float, K: float, label: str = "") -> RadialState:
    """Y -> K Y^(-1/2) w(nu Y^2) with analytic derivatives."""

    def evaluate(Y):
        s = nu * Y**2
        w, w1, w2 = coulomb_state.derivs(s)
        s1 = 2 * nu * Y
        h = Y**-0.5
        h1 = -0.5 * h / Y
        h2 = 0.75 * h / Y**2
        t = h * w
        t1 = h1 * w + h * w1 * s1
        t2 = h2 * w + 2 * h1 * w1 * s1 + h * (w2 * s1**2 + w1 * 2 * nu)
        return K * t, K * t1, K * t2

    return RadialState(
        system="oscillator",
        dim=math.nan,
        n=math.nan,
        l=math.nan,
        energy=math.nan,
        power=2 * coulomb_state.power - 0.5,
        tail=("gauss", coulomb_state.tail[1] * nu),
        span=(1e-3, 8.0),
        evaluator=evaluate,
        label=label or f"K Y^-1/2 {coulomb_state.label}",
    )


@dataclass
class MapReport:
    kind: str
    lam: int
    coulomb: dict
    oscillator: dict
    K: float
    norm_defect: float
    max_pointwise_error: float
    energy_coulomb: float
    energy_oscillator: float
    energy_residual: float
    relation_residuals: dict
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.max_pointwise_error < POINTWISE_TOL
            and self.energy_residual < ENERGY_TOL
            and self.norm_defect < NORM_TOL
            and max(abs(v) for v in self.relation_residuals.values()) < SHIFT_TOL
        )

    def to_dict(self):
        out = asdict(self)
        out["passed"] = self.passed
        return out


@dataclass
class MapResult:
    spec: MapSpec
    report: MapReport
    transported: RadialState
    target: RadialState


def general_map(spec: MapSpec, scales: PhysicalScales = UNIT_SCALES, kind: str = "general",
                grid=None) -> MapResult:
    c, o = spec.coulomb, spec.oscillator
    w = sqdt_coulomb_state(spec.coulomb_profile, spec.d, spec.n, spec.l, scales)
    target = sqdt_oscillator_state(spec.oscillator_profile, spec.base_D, spec.base_N, spec.base_L, scales)
    nu = c.n_star + c.gamma_star
    K = map_constant(spec, scales)
    moved = transport(w, nu, K)
    grid = np.geomspace(*target.span, GRID_POINTS) if grid is None else grid
    ref = target(grid)
    err = float(np.max(np.abs(moved(grid) - ref)) / np.max(np.abs(ref)))
    norm = verify.norm(moved, verify.pair_rule(moved, moved)) * scales.R0 ** (o.dim_star / 2)
    E = sqdt_coulomb_energy(spec.coulomb_profile, spec.d, spec.n, spec.l)
    F = sqdt_oscillator_energy(spec.oscillator_profile, spec.base_D, spec.base_N, spec.base_L)
    energy_res = abs(F - (2 * math.sqrt(-1.0 / E) + 4 * c.shift))
    notes = [] if kind == "classic" else [K_READING_NOTE]
    report = MapReport(
        kind=kind,
        lam=spec.lam,
        coulomb=c.to_dict(),
        oscillator=o.to_dict(),
        K=K,
        norm_defect=abs(norm - 1.0),
        max_pointwise_error=err,
        energy_coulomb=E,
        energy_oscillator=F,
        energy_residual=energy_res,
        relation_residuals=spec.relation_residuals(),
        notes=notes,
    )
    return MapResult(spec, report, moved, target)


def classic_map(d: int, lam: int, n: int, l: int, scales: PhysicalScales = UNIT_SCALES) -> MapResult:
    """Exact Coulomb (d, n, l) to exact oscillator (2d-2-2lambda, 2n-2+lambda, 2l+lambda).

    lambda may be negative down to -2l, which is fine at fixed l (the
    fixed-l range of D); the full spectrum needs 0 <= lambda <= d-2.
    """
    if int(d) != d or d < 2:
        raise DomainError(f"Coulomb dimension must be an integer >= 2, got {d}")
    spec = MapSpec(d, n, l, lam)
    return general_map(spec, scales, kind="classic")


def classic_map_range(d: int, l: int = 0, full_spectrum: bool = True) -> list[tuple[int, int]]:
    """Admissible (D, lambda) pairs, sorted by D.

    Full spectrum: 2 <= D <= 2d-2 (lambda from d-2 down to 0).
    Fixed l: 2 <= D <= 2d-2+4l (lambda down to -2l).
    """
    lowest = 0 if full_spectrum else -2 * l
    return [(2 * d - 2 - 2 * lam, lam) for lam in range(d - 2, lowest - 1, -1)]


def split_shift(diff: float) -> tuple[int, float]:
    """Write a defect difference (delta - i) as a level count i >= 0 and defect delta >= 0."""
    count = max(0, math.ceil(-diff - SHIFT_TOL))
    return count, diff + count


THREE_DIM_KINDS = ("oscillator_exact", "coulomb_exact", "custom")


def three_dim_map(lam: int, which_exact: str, n: int = 1, l: int = 0,
                  coulomb_shift: float | None = None) -> MapSpec:
    """Both systems three-dimensional: j = 0, J = 2 lambda - 1, and
    Delta - I = 2(delta - i) + lambda - 1/2.

    ``coulomb_shift`` is delta - i for the 'custom' choice.
    """
    if lam not in (0, 1):
        raise DomainError(f"three-dimensional maps need lambda in {{0, 1}}, got {lam}")
    if which_exact == "oscillator_exact":
        c_diff = (0.5 - lam) / 2
    elif which_exact == "coulomb_exact":
        c_diff = 0.0
    elif which_exact == "custom":
        if coulomb_shift is None:
            raise DomainError("custom three-dimensional map needs coulomb_shift = delta - i")
        c_diff = float(coulomb_shift)
    else:
        raise DomainError(f"unknown choice {which_exact!r}; use one of {THREE_DIM_KINDS}")
    o_diff = 2 * c_diff + lam - 0.5
    i, delta = split_shift(c_diff)
    I, Delta = split_shift(o_diff)
    cp = CoulombDefectProfile(j=0, tail=(i, delta), name=which_exact)
    op = OscillatorDefectProfile(J=2 * lam - 1, tail=(I, Delta), name=which_exact)
    return MapSpec(3, n, l, lam, cp, op)


def odd_dimension_spec(n: int, l: int) -> MapSpec:
    """d = 3, j = 0, J = 1 with lambda = 1, so D* = 3; exact Coulomb side (a = 0)
    and oscillator defect Delta - I = 1/2."""
    op = OscillatorDefectProfile(J=1, tail=(0, 0.5), name="odd")
    return MapSpec(3, n, l, 1, ZERO_COULOMB, op)


def pointwise_error(result: MapResult, grid=None) -> float:
    grid = np.geomspace(*result.target.span, GRID_POINTS) if grid is None else grid
    ref = result.target(grid)
    return float(np.max(np.abs(result.transported(grid) - ref)) / np.max(np.abs(ref)))


# Table of sodium parameters: rows (l, i, delta as printed). The final row
# stands for every l >= 4.
SODIUM_TABLE_INPUT = (
    (0, 2, "1.35"),
    (1, 1, "0.859"),
    (2, 0, "0.01"),
    (3, 0, "0.00"),
    (4, 0, "0"),
)
SODIUM_I_PROFILE = {1: 2, 3: 1}
TABLE1_EXPECTED_DELTA = ("1.20", "1.218", "0.52", "0.50", "0.5")


@dataclass
class TableRow:
    l: int
    i: int
    n_min: int
    n_s_min: int
    delta: str
    L: int
    I: int
    N_min: int
    N_s_min: int
    Delta: str
    open_ended: bool = False

    def to_dict(self):
        return asdict(self)


def sodium_table(lam: int = 1, I_profile: dict | None = None, rows=SODIUM_TABLE_INPUT) -> list[TableRow]:
    """Oscillator parameters matching a three-dimensional Coulomb defect table.

    Delta(L) = I(L) + 2(delta(l) - i(l)) + lambda - 1/2 with L = 2l + lambda,
    computed in decimal arithmetic so the result carries the precision of the
    printed defects. Each row is also checked as a full MapSpec (ranges and
    A = 2a).
    """
    I_profile = SODIUM_I_PROFILE if I_profile is None else I_profile
    half = Decimal("0.5")
    table = []
    for pos, (l, i, delta_text) in enumerate(rows):
        L = 2 * l + lam
        I = int(I_profile.get(L, 0))
        Delta = Decimal(I) + 2 * (Decimal(delta_text) - i) + lam - half
        n_min = l + 1
        N_min = 2 * n_min - 2 + lam
        cp = CoulombDefectProfile(((l, i, float(delta_text)),), j=0)
        op = OscillatorDefectProfile(((L, I, float(Delta)),), J=2 * lam - 1)
        MapSpec(3, n_min, l, lam, cp, op)
        table.append(TableRow(
            l=l, i=i, n_min=n_min, n_s_min=n_min + i, delta=delta_text,
            L=L, I=I, N_min=N_min, N_s_min=N_min + 2 * I, Delta=str(Delta),
            open_ended=pos == len(rows) - 1,
        ))
    return table


def table1_check(table: list[TableRow]) -> list[tuple[str, str, bool]]:
    return [(row.Delta, want, row.Delta == want) for row, want in zip(table, TABLE1_EXPECTED_DELTA)]


def format_table(table: list[TableRow]) -> str:
    head = f"{'l':>4} {'i':>2} {'n':>6} {'n_s':>6} {'delta':>7} | {'L':>4} {'I':>2} {'N':>6} {'N_s':>6} {'Delta':>7}"
    lines = [head, "-" * len(head)]
    for r in table:
        if r.open_ended:
            cells = (f">={r.l}", ">=l+1", ">=l+1", f">={r.L}", ">=L", ">=L")
        else:
            cells = (str(r.l), f">={r.n_min}", f">={r.n_s_min}", str(r.L), f">={r.N_min}", f">={r.N_s_min}")
        lines.append(
            f"{cells[0]:>4} {r.i:>2} {cells[1]:>6} {cells[2]:>6} {r.delta:>7} | "
            f"{cells[3]:>4} {r.I:>2} {cells[4]:>6} {cells[5]:>6} {r.Delta:>7}"
        )
    return "\n".join(lines)
