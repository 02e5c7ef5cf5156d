"""Named verification suites run by ``radialmap verify`` and the acceptance tests.

Each suite returns a SuiteResult holding individual checks (value against
tolerance) so that reports stay machine readable.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import continuum, mapping, sqdt, susy, verify
from .systems import (
    CoulombQN,
    OscillatorQN,
    coulomb_energy,
    coulomb_operator,
    coulomb_state,
    oscillator_energy,
    oscillator_operator,
    oscillator_state,
    standard_grid,
)


@dataclass
class Check:
    name: str
    value: float
    tol: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.value = float(self.value)
        self.passed = bool(self.value < self.tol)

    def to_dict(self):
        return {"name": self.name, "value": self.value, "tol": self.tol, "passed": self.passed}


@dataclass
class SuiteResult:
    name: str
    checks: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def worst(self, prefix: str = "") -> float:
        vals = [c.value for c in self.checks if c.name.startswith(prefix)]
        return max(vals) if vals else 0.0

    def add(self, name, value, tol):
        self.checks.append(Check(name, value, tol))

    def to_dict(self):
        return {
            "suite": self.name,
            "passed": self.passed,
            "seconds": self.seconds,
            "failures": [c.to_dict() for c in self.checks if not c.passed],
            "checks": [c.to_dict() for c in self.checks],
            "details": self.details,
        }


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        result = fn(*args, **kwargs)
        result.seconds = time.perf_counter() - start
        return result

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


SYNTHETIC_COULOMB = (
    sqdt.CoulombDefectProfile(((0, 1, 0.4), (1, 0, 0.25), (2, 0, 0.05)), j=1, name="synthetic-j+1"),
    sqdt.CoulombDefectProfile(((0, 0, -0.3), (1, 2, 1.5)), j=-1, name="synthetic-j-1"),
)
SYNTHETIC_OSCILLATOR = (
    sqdt.OscillatorDefectProfile(((0, 1, 0.3), (1, 0, 0.5), (2, 2, 1.1)), J=1, name="synthetic-J+1"),
)


@_timed
def orthonormality(d_list=(2, 3, 5, 8), l_max=3, extra=6, D_list=(1, 2, 3, 4, 7), L_max=3, k_max=5,
                   tol=1e-8) -> SuiteResult:
    """Overlap matrices of fixed-angular-momentum stacks against the identity."""
    res = SuiteResult("orthonormality")
    for d in d_list:
        for l in range(l_max + 1):
            states = [coulomb_state(CoulombQN(d, n, l)) for n in range(l + 1, l + extra + 1)]
            res.add(f"coulomb d={d} l={l}", verify.identity_deviation(verify.overlap_matrix(states)), tol)
    for D in D_list:
        for L in range(min(L_max, 1 if D == 1 else L_max) + 1):
            states = [oscillator_state(OscillatorQN(D, L + 2 * k, L)) for k in range(k_max + 1)]
            res.add(f"oscillator D={D} L={L}", verify.identity_deviation(verify.overlap_matrix(states)), tol)
    for prof in (sqdt.SODIUM,) + SYNTHETIC_COULOMB:
        for l in range(3):
            states = [row[3] for row in sqdt.coulomb_stack(prof, 3, l, 5)]
            res.add(f"sqdt {prof.name} d=3 l={l}", verify.identity_deviation(verify.overlap_matrix(states)), tol)
    for prof in SYNTHETIC_OSCILLATOR:
        for L in range(3):
            states = [row[3] for row in sqdt.oscillator_stack(prof, 3, L, 5)]
            res.add(f"sqdt {prof.name} D=3 L={L}", verify.identity_deviation(verify.overlap_matrix(states)), tol)
    return res


def _scan(res, label, op, state, tol):
    res.add(label, verify.residual_scan(op, state, standard_grid(state)).max_rel, tol)


@_timed
def residuals(tol=1e-8) -> SuiteResult:
    """Every constructed bound state against its own radial equation and eigenvalue."""
    res = SuiteResult("residuals")
    for d in (2, 3, 4, 5, 7, 8):
        for l in range(4):
            for n in range(l + 1, l + 7):
                qn = CoulombQN(d, n, l)
                _scan(res, f"exact coulomb d={d} n={n} l={l}", coulomb_operator(qn, coulomb_energy(qn)),
                      coulomb_state(qn), tol)
    for D in (1, 2, 3, 4, 7):
        for L in range(2 if D == 1 else 4):
            for k in range(6):
                qn = OscillatorQN(D, L + 2 * k, L)
                _scan(res, f"exact oscillator D={D} N={qn.N} L={L}",
                      oscillator_operator(qn, oscillator_energy(qn)), oscillator_state(qn), tol)
    for tier in (0, 1, 2):
        for d in (2, 3, 5):
            for l in range(3):
                for n in range(l + tier + 1, l + tier + 5):
                    state = (coulomb_state(CoulombQN(d, n, l)) if tier == 0
                             else susy.fermionic_state("coulomb", d, n, l + tier, tier))
                    op = susy.tier_operator("coulomb", d, l, tier, susy.susy_energy_coulomb(d, n, l + tier, tier))
                    _scan(res, f"susy coulomb tier={tier} d={d} n={n} l={l + tier}", op, state, tol)
        for D in (1, 2, 3, 4):
            for L in range(2 if D == 1 else 3):
                for k in range(4):
                    N = L + tier + 2 * k
                    state = (oscillator_state(OscillatorQN(D, N, L)) if tier == 0
                             else susy.fermionic_state("oscillator", D, N, L + tier, tier))
                    op = susy.tier_operator("oscillator", D, L, tier,
                                            susy.susy_energy_oscillator(D, N, L + tier, tier))
                    _scan(res, f"susy oscillator tier={tier} D={D} N={N} L={L + tier}", op, state, tol)
    for prof in (sqdt.SODIUM,) + SYNTHETIC_COULOMB:
        for d in (3, 5):
            for l in range(4):
                for n in range(l + 1, l + 5):
                    state = sqdt.sqdt_coulomb_state(prof, d, n, l)
                    _scan(res, f"sqdt {prof.name} d={d} n={n} l={l}",
                          sqdt.sqdt_coulomb_operator(prof, d, n, l), state, tol)
                    _scan(res, f"sqdt v_eff {prof.name} d={d} n={n} l={l}",
                          sqdt.coulomb_veff_operator(prof, d, n, l), state, tol)
    for prof in SYNTHETIC_OSCILLATOR:
        for D in (1, 2, 3, 4):
            for L in range(2 if D == 1 else 3):
                for k in range(4):
                    N = L + 2 * k
                    state = sqdt.sqdt_oscillator_state(prof, D, N, L)
                    _scan(res, f"sqdt {prof.name} D={D} N={N} L={L}",
                          sqdt.sqdt_oscillator_operator(prof, D, N, L), state, tol)
                    _scan(res, f"sqdt V_eff {prof.name} D={D} N={N} L={L}",
                          sqdt.oscillator_veff_operator(prof, D, N, L), state, tol)
    return res


@_timed
def susy_suite(d_list=(2, 3, 4, 5, 6, 7, 8), l_max=3, D_list=(1, 2, 3, 4, 5, 6, 7, 8), extra=5,
               tol=1e-8) -> SuiteResult:
    """Ground-state annihilation, intertwining with constant^2 = eps, and degeneracy pairings."""
    res = SuiteResult("susy")
    sectors = [("coulomb", d, l) for d in d_list for l in range(l_max + 1)]
    sectors += [("oscillator", D, L) for D in D_list for L in range(2 if D == 1 else l_max + 1)]
    for system, dim, l in sectors:
        sp = susy.superpotential(system, dim, l)
        res.add(f"annihilation {system} dim={dim} l={l}", susy.ground_annihilation(sp), tol)
        res.add(f"exp(-u) shape {system} dim={dim} l={l}", susy.exp_minus_u_error(sp), tol)
        for k in range(1, extra + 1):
            state = (coulomb_state(CoulombQN(dim, l + 1 + k, l)) if system == "coulomb"
                     else oscillator_state(OscillatorQN(dim, l + 2 * k, l)))
            info = susy.intertwining_check(sp, state)
            res.add(f"intertwining shape {state.label}", info["shape_error"], tol)
            res.add(f"intertwining constant^2 {state.label}", info["constant_sq_rel_error"], tol)
            res.add(f"ladder norm^2 {state.label}", info["norm_sq_rel_error"], tol)
    # Degeneracies on analytic spectra: exact equality.
    bad = 0
    for d in d_list:
        for l in range(l_max + 1):
            for n in range(l + 2, l + 2 + extra):
                if susy.susy_energy_coulomb(d, n, l) != susy.susy_energy_coulomb(d, n, l + 1, tier=1):
                    bad += 1
    for D in D_list:
        for L in range(2 if D == 1 else l_max + 1):
            for k in range(1, extra + 1):
                N = L + 2 * k
                if susy.susy_energy_oscillator(D, N, L) != susy.susy_energy_oscillator(D, N - 1, L + 1, tier=1):
                    bad += 1
                if k >= 2 and susy.susy_energy_oscillator(D, N, L) != susy.susy_energy_oscillator(D, N - 2, L + 2, tier=2):
                    bad += 1
    res.add("degeneracy mismatches", bad, 0.5)
    # Bosonic ground unpaired, every other bosonic level paired with a fermionic one.
    spectra = {
        "bosonic": [((n, 0), susy.susy_energy_coulomb(3, n, 0)) for n in range(1, 8)],
        "fermionic": [((n, 1), susy.susy_energy_coulomb(3, n, 1, tier=1)) for n in range(2, 8)],
    }
    paired, lone_b, lone_f = verify.pairings(verify.degeneracy_report(spectra), "bosonic", "fermionic")
    res.add("coulomb pairing defects", abs(len(paired) - 6) + abs(len(lone_b) - 1) + len(lone_f), 0.5)
    res.details["coulomb unpaired bosonic"] = lone_b
    spectra = {
        "bosonic": [((N, 0), susy.susy_energy_oscillator(3, N, 0)) for N in range(0, 14, 2)],
        "fermionic": [((N, 1), susy.susy_energy_oscillator(3, N, 1, tier=1)) for N in range(1, 13, 2)],
    }
    paired, lone_b, lone_f = verify.pairings(verify.degeneracy_report(spectra), "bosonic", "fermionic")
    res.add("oscillator pairing defects", abs(len(paired) - 6) + abs(len(lone_b) - 1) + len(lone_f), 0.5)
    res.details["oscillator pairs"] = [[list(a), list(b)] for a, b, _ in paired]
    # D=1: each parity substack has its own supersymmetry with spacing 4.
    for L in (0, 1):
        gaps = np.diff([susy.susy_energy_oscillator(1, N, L) for N in range(L, L + 8, 2)])
        res.add(f"D=1 L={L} spacing", float(np.max(np.abs(gaps - 4.0))), 1e-15)
    return res


def square_paths(d=3, lams=(0, 1), n_max=5, tol=1e-10) -> list[Check]:
    """Commutativity of SUSY and SQDT diagrams: quantum-number paths and pointwise states."""
    checks = []
    step_c = susy.stack_correspondence("coulomb", "next")
    step_o = susy.stack_correspondence("oscillator", "second")
    i1 = sqdt.CoulombDefectProfile(j=0, tail=(1, 0.0), name="fermionic")
    I2 = sqdt.OscillatorDefectProfile(J=0, tail=(2, 0.0), name="second fermionic")
    for lam in lams:
        for n in range(1, n_max + 1):
            for l in range(n):
                spec = mapping.MapSpec(d, n, l, lam)
                # shift then map
                n1, l1 = step_c(n, l)
                via_coulomb = (2 * n1 - 2 + lam, 2 * l1 + lam)
                # map then shift
                via_osc = step_o(spec.base_N, spec.base_L)
                checks.append(Check(f"susy-square path d={d} lam={lam} n={n} l={l}",
                                    abs(via_coulomb[0] - via_osc[0]) + abs(via_coulomb[1] - via_osc[1]), 0.5))
                # pointwise: transported fermionic Coulomb state vs second-fermionic oscillator state
                fer = mapping.classic_map(d, lam, n1, l1)
                target = susy.second_fermionic_state("oscillator", spec.base_D, *via_osc)
                grid = np.geomspace(*target.span, mapping.GRID_POINTS)
                ref = target(grid)
                err = np.max(np.abs(fer.transported(grid) - ref)) / np.max(np.abs(ref))
                checks.append(Check(f"susy-square state d={d} lam={lam} n={n} l={l}", err, tol))
                # the same through the general map with a = 1, A = 2
                gen = mapping.general_map(mapping.MapSpec(d, n, l, lam, i1, I2))
                q = gen.report.oscillator
                checks.append(Check(f"susy-square general qn d={d} lam={lam} n={n} l={l}",
                                    abs(q["n_star"] - via_osc[0]) + abs(q["l_star"] - via_osc[1]), 1e-12))
                err = np.max(np.abs(gen.transported(grid) - ref)) / np.max(np.abs(ref))
                checks.append(Check(f"susy-square general state d={d} lam={lam} n={n} l={l}", err, tol))
                # SQDT with i=1 is the fermionic Coulomb state itself
                w1 = sqdt.sqdt_coulomb_state(i1, d, n, l)
                wf = susy.fermionic_state("coulomb", d, n1, l1)
                y = np.geomspace(*wf.span, mapping.GRID_POINTS)
                checks.append(Check(f"susy-square sqdt=fermionic d={d} lam={lam} n={n} l={l}",
                                    np.max(np.abs(w1(y) - wf(y))) / np.max(np.abs(wf(y))), tol))
        # SQDT square: bosonic -> SQDT on each side vs the general map, using the
        # three-dimensional families.
        for which in ("oscillator_exact", "coulomb_exact"):
            for n in range(1, n_max + 1):
                for l in range(n):
                    spec = mapping.three_dim_map(lam, which, n=n, l=l)
                    c, o = spec.coulomb, spec.oscillator
                    J, j = spec.oscillator_profile.J, spec.coulomb_profile.j
                    from_coulomb = (2 * c.n_star - 2 + lam + j - J / 2, 2 * c.l_star + lam + j - J / 2)
                    checks.append(Check(f"sqdt-square path {which} lam={lam} n={n} l={l}",
                                        abs(from_coulomb[0] - o.n_star) + abs(from_coulomb[1] - o.l_star), 1e-12))
                    rep = mapping.general_map(spec).report
                    checks.append(Check(f"sqdt-square state {which} lam={lam} n={n} l={l}", rep.max_pointwise_error, tol))
    return checks


@_timed
def maps(d_list=(3, 4, 5), n_max=6, tol=1e-10, energy_tol=1e-12) -> SuiteResult:
    """Classic map, odd-dimension general map, three-dimensional cases, and diagram commutativity."""
    res = SuiteResult("maps")
    for d in d_list:
        for D, lam in mapping.classic_map_range(d):
            for n in range(1, n_max + 1):
                for l in range(n):
                    rep = mapping.classic_map(d, lam, n, l).report
                    tag = f"d={d} lam={lam} n={n} l={l}"
                    res.add(f"classic pointwise {tag}", rep.max_pointwise_error, tol)
                    res.add(f"classic energy {tag}", rep.energy_residual, energy_tol)
                    res.add(f"classic norm {tag}", rep.norm_defect, mapping.NORM_TOL)
    res.details["d=3 images"] = [D for D, _ in mapping.classic_map_range(3)]
    for n in range(1, n_max + 1):
        for l in range(n):
            rep = mapping.general_map(mapping.odd_dimension_spec(n, l)).report
            tag = f"n={n} l={l}"
            res.add(f"odd D*=3 pointwise {tag}", rep.max_pointwise_error, tol)
            res.add(f"odd D*=3 energy {tag}", rep.energy_residual, energy_tol)
            res.add(f"odd D*=3 dimension {tag}", abs(rep.oscillator["dim_star"] - 3), 1e-15)
    for chk in three_dim_examples(tol):
        res.checks.append(chk)
    res.checks.extend(square_paths(tol=tol))
    return res


def three_dim_examples(tol=1e-10) -> list[Check]:
    checks = []
    # Exact oscillator, lambda = 1: (n*=9/4, l*=1/4), (9/4, 5/4) -> (N=3, L=1), (N=3, L=3).
    energies = []
    for l, (N_want, L_want, l_star) in zip((0, 1), ((3, 1, 0.25), (3, 3, 1.25))):
        spec = mapping.three_dim_map(1, "oscillator_exact", n=2, l=l)
        rep = mapping.general_map(spec).report
        c, o = rep.coulomb, rep.oscillator
        qn_err = abs(c["n_star"] - 2.25) + abs(c["l_star"] - l_star) + abs(o["n_star"] - N_want) + abs(o["l_star"] - L_want)
        checks.append(Check(f"oscillator-exact qn l={l}", qn_err, 1e-15))
        checks.append(Check(f"oscillator-exact state l={l}", rep.max_pointwise_error, tol))
        checks.append(Check(f"oscillator-exact E l={l}", abs(rep.energy_coulomb + 1 / (2 * 2 + 0.5) ** 2), 1e-15))
        checks.append(Check(f"oscillator-exact F l={l}", abs(rep.energy_oscillator - (2 * N_want + 4)), 1e-12))
        energies.append((rep.energy_coulomb, rep.energy_oscillator))
    checks.append(Check("oscillator-exact degeneracy",
                        abs(energies[0][0] - energies[1][0]) + abs(energies[0][1] - energies[1][1]), 1e-15))
    # Exact Coulomb, lambda = 0: (n=3, l=1), (3, 2) -> (N*=9/2, L*=5/2), (9/2, 9/2).
    energies = []
    for l, L_want in ((1, 2.5), (2, 4.5)):
        spec = mapping.three_dim_map(0, "coulomb_exact", n=3, l=l)
        rep = mapping.general_map(spec).report
        o = rep.oscillator
        qn_err = abs(o["n_star"] - 4.5) + abs(o["l_star"] - L_want) + abs(o["dim_star"] - 3)
        checks.append(Check(f"coulomb-exact qn l={l}", qn_err, 1e-15))
        checks.append(Check(f"coulomb-exact state l={l}", rep.max_pointwise_error, tol))
        checks.append(Check(f"coulomb-exact E,F l={l}",
                            abs(rep.energy_coulomb + 1 / 36) + abs(rep.energy_oscillator - 12), 1e-12))
        energies.append((rep.energy_coulomb, rep.energy_oscillator))
    checks.append(Check("coulomb-exact degeneracy",
                        abs(energies[0][0] - energies[1][0]) + abs(energies[0][1] - energies[1][1]), 1e-15))
    return checks


def sqdt_fd_problem(profile=sqdt.SODIUM, l: int = 0, count: int = 3, d: int = 3):
    """Deformed Coulomb potential (starred barrier) and its analytic SQDT levels."""
    q = sqdt.coulomb_starred(profile, d, l + 1, l)
    strength = (q.l_star + q.gamma_star) * (q.l_star + q.gamma_star + 1)
    potential = lambda y: strength / y**2 - 1.0 / y
    analytic = [sqdt.sqdt_coulomb_energy(profile, d, n, l) for n in range(l + 1, l + 1 + count)]
    return potential, analytic


@_timed
def fd_oracle(profile=sqdt.SODIUM, l=0, points=4000, y_max=200.0, tol=1e-4) -> SuiteResult:
    """Finite-difference spectra of the deformed potentials against the analytic spectra."""
    res = SuiteResult("fd-oracle")
    potential, analytic = sqdt_fd_problem(profile, l)
    cmp = verify.compare_spectra(analytic, verify.fd_eigensolve(potential, y_max, 3, points))
    for k, (a, b, e) in enumerate(cmp.rows):
        res.add(f"{profile.name} l={l} level {k}", e, tol)
    res.details[profile.name or "profile"] = cmp.to_dict()
    ratio = verify.convergence_ratio(potential, y_max, 3, points // 2, analytic)
    res.add(f"{profile.name} convergence |ratio-4|", abs(ratio - 4.0), 1.0)
    res.details[f"{profile.name} convergence ratio"] = ratio
    # Exact D=3 oscillator, L=0: eigenvalues 3, 7, 11.
    osc = lambda Y: Y**2
    cmp = verify.compare_spectra([3.0, 7.0, 11.0], verify.fd_eigensolve(osc, 10.0, 3, 2000))
    res.add("oscillator D=3 L=0", cmp.max_rel, 1e-5)
    res.details["oscillator"] = cmp.to_dict()
    ratio = verify.convergence_ratio(osc, 10.0, 3, 1000, [3.0, 7.0, 11.0])
    res.add("oscillator convergence |ratio-4|", abs(ratio - 4.0), 1.0)
    res.details["oscillator convergence ratio"] = ratio
    # Hydrogen l=0 in the SUSY gauge: 0 and 3/16. The zero level is checked absolutely.
    sp = susy.superpotential("coulomb", 3, 0)
    v_plus, _ = sp.partner_potentials()
    vals = verify.fd_eigensolve(v_plus, y_max, 2, points).eigenvalues
    res.add("hydrogen susy ground (absolute)", abs(vals[0]), tol)
    res.add("hydrogen susy first excited", abs(vals[1] - 3 / 16) / (3 / 16), tol)
    res.details["hydrogen susy"] = [float(v) for v in vals]
    return res


@_timed
def continuum_suite(d=3, lams=(0, 1), energies=(0.25, 1.0, 4.0), l_max=2, tol_res=1e-6,
                    tol_ratio=1e-8) -> SuiteResult:
    res = SuiteResult("continuum")
    for lam in lams:
        for E in energies:
            for l in range(l_max + 1):
                for repulsive in (False, True):
                    r = continuum.continuum_map(d, E, l, lam, repulsive=repulsive)
                    tag = f"{'rep' if repulsive else 'att'} lam={lam} E={E:g} l={l}"
                    res.add(f"transported residual {tag}", r.transported_residual, tol_res)
                    res.add(f"ratio constancy {tag}", r.ratio_error, tol_ratio)
                    res.add(f"coulomb residual {tag}", r.source_residual, tol_res)
                    want = (-2.0 if repulsive else 2.0) / math.sqrt(E)
                    res.add(f"F relation {tag}", abs(r.F - want), 1e-12)
                    if repulsive:
                        res.add(f"F negative {tag}", 0.0 if r.F < 0 else 1.0, 0.5)
    for sign in (1, -1):
        w = continuum.coulomb_continuum_wave(d, 1.0, 1, sign)
        res.add(f"coulomb wave residual sign={sign}", continuum.wave_residual(w), tol_res)
    y = np.geomspace(0.1, 20, 100)
    out = continuum.coulomb_continuum_wave(d, 1.0, 1, 1)(y)
    inc = continuum.coulomb_continuum_wave(d, 1.0, 1, -1)(y)
    res.add("incoming = conj(outgoing)", np.max(np.abs(inc - np.conj(out))) / np.max(np.abs(out)), 1e-14)
    cont = continuum.continued_coulomb_wave(3, 2, 0)
    _, err = verify.proportionality_error(coulomb_state(CoulombQN(3, 2, 0))(y), cont(y))
    res.add("bound-state recovery d=3 n=2 l=0", err, tol_ratio)
    for D, N, L in ((3, 4, 0), (2, 3, 1), (4, 2, 2)):
        _, err = continuum.continuation_check(D, N, L)
        res.add(f"analytic continuation D={D} N={N} L={L}", err, tol_ratio)
    return res


@_timed
def table1_suite() -> SuiteResult:
    res = SuiteResult("table1")
    table = mapping.sodium_table()
    for row, (got, want, ok) in zip(table, mapping.table1_check(table)):
        res.add(f"Delta row l={row.l}: {got} vs {want}", 0.0 if ok else 1.0, 0.5)
    res.details["rows"] = [r.to_dict() for r in table]
    return res


SUITES = {
    "orthonormality": orthonormality,
    "residuals": residuals,
    "susy": susy_suite,
    "maps": maps,
    "fd-oracle": fd_oracle,
    "continuum": continuum_suite,
    "table1": table1_suite,
}


def run_all() -> list[SuiteResult]:
    return [fn() for fn in SUITES.values()]
