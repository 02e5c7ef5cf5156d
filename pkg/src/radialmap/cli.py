"""Command-line interface.

    radialmap spectrum coulomb --d 3 --l 0 --n-max 3
    radialmap wavefn oscillator --D 3 --N 0 --L 0 --grid 1,2
    radialmap map classic --d 3 --lambda 0 --n 2 --l 1
    radialmap table1 --check --format text
    radialmap verify all

Output goes to standard output as JSON unless ``--format csv|text`` or
``--output PATH`` is given. Exit status: 0 all checks pass, 1 a check
exceeded its tolerance, 2 invalid or inconsistent input.

Profile files
-------------
Line oriented, ``#`` starts a comment::

    name = my-atom
    system = coulomb        # or oscillator; inferred from j / J when absent
    j = 0                   # J for an oscillator profile
    tail = 0 0.0            # level count and defect for unlisted l
    [rows]
    0 2 1.35                # l i delta   (or L I Delta)
    1 1 0.859

Rows must have exactly three columns. ``--profile`` also accepts the
preset names ``sodium`` and ``exact``.

JSON schemas
------------
spectrum: {"command", "system", "dim", "l", "profile", "rows": [{"n", "l", "energy"}]}
wavefn:   {"command", "state", "rows": [{"x", "value"[, "derivative"]}]}; complex
          values are [re, im] pairs
map:      {"command", "kind", "passed", "report": {...}}
table1:   {"command", "rows": [...], "check": [{"row", "got", "expected", "match"}], "passed"}
verify:   {"command", "passed", "suites": [{"suite", "passed", "seconds", "failures",
          "checks", "details"}]}
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import continuum, mapping, sqdt, suites
from .errors import AccuracyError, ConsistencyError, DomainError, SolverError
from .systems import (
    CoulombQN,
    OscillatorQN,
    coulomb_energy,
    coulomb_state,
    oscillator_energy,
    oscillator_state,
    standard_grid,
)

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_INPUT = 2

CONTINUUM_RESIDUAL_TOL = 1e-6
CONTINUUM_RATIO_TOL = 1e-8


# ---------------------------------------------------------------- profiles

def parse_profile_text(text: str, name: str = ""):
    """Parse the profile file format into a Coulomb or oscillator defect profile."""
    scalars = {}
    rows = []
    in_rows = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower() == "[rows]":
            in_rows = True
            continue
        if line.startswith("["):
            raise DomainError(f"line {lineno}: unknown section {line}")
        if in_rows:
            cols = line.split()
            if len(cols) != 3:
                raise DomainError(
                    f"line {lineno}: rows need exactly three columns (l i delta); "
                    f"got {len(cols)}. Defects depending on n are not supported"
                )
            try:
                rows.append((int(cols[0]), int(cols[1]), float(cols[2])))
            except ValueError as exc:
                raise DomainError(f"line {lineno}: {exc}") from None
            continue
        if "=" not in line:
            raise DomainError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        scalars[key] = value

    system = scalars.pop("system", None)
    if system is None:
        system = "oscillator" if "J" in scalars else "coulomb"
    label = scalars.pop("name", name)
    tail = scalars.pop("tail", "0 0.0").split()
    if len(tail) != 2:
        raise DomainError("tail needs two values: level count and defect")
    try:
        tail = (int(tail[0]), float(tail[1]))
        if system == "coulomb":
            shift = int(scalars.pop("j", 0))
            profile = sqdt.CoulombDefectProfile(tuple(rows), j=shift, tail=tail, name=label)
        elif system == "oscillator":
            shift = int(scalars.pop("J", 0))
            profile = sqdt.OscillatorDefectProfile(tuple(rows), J=shift, tail=tail, name=label)
        else:
            raise DomainError(f"unknown system {system!r}")
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"bad profile value: {exc}") from None
    if scalars:
        raise DomainError(f"unknown profile keys for {system}: {sorted(scalars)}")
    return profile


def load_profile(spec: str | None, system: str):
    if spec is None or spec == "exact":
        return sqdt.ZERO_COULOMB if system == "coulomb" else sqdt.ZERO_OSCILLATOR
    if spec in sqdt.PRESETS:
        profile = sqdt.PRESETS[spec]
    else:
        path = Path(spec)
        if not path.is_file():
            raise DomainError(f"profile {spec!r} is neither a preset {sorted(sqdt.PRESETS)} nor a file")
        profile = parse_profile_text(path.read_text(), name=path.stem)
    want = sqdt.CoulombDefectProfile if system == "coulomb" else sqdt.OscillatorDefectProfile
    if not isinstance(profile, want):
        raise DomainError(f"profile {spec!r} is not a {system} profile")
    return profile


# ---------------------------------------------------------------- output

def _jsonable(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.generic):
        return _jsonable(obj.item())
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()


def _text(rows: list[dict]) -> str:
    if not rows:
        return ""
    keys = list(rows[0])
    cells = [[str(r[k]) for k in keys] for r in rows]
    widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
    lines = ["  ".join(k.rjust(w) for k, w in zip(keys, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def emit(args, payload: dict, rows: list[dict], text: str | None = None) -> None:
    fmt = args.format
    if fmt == "json":
        out = json.dumps(_jsonable(payload), indent=2) + "\n"
    elif fmt == "csv":
        out = _csv(_jsonable(rows))
    else:
        out = text if text is not None else _text(_jsonable(rows))
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)


# ---------------------------------------------------------------- commands

def cmd_spectrum(args) -> int:
    system = args.system
    rows = []
    if system in ("coulomb", "sqdt-coulomb"):
        d, l = args.d, args.l
        if system == "coulomb":
            n_max = args.n_max if args.n_max is not None else l + args.count
            for n in range(l + 1, n_max + 1):
                rows.append({"n": n, "l": l, "energy": coulomb_energy(CoulombQN(d, n, l))})
            dim, prof = d, None
        else:
            profile = load_profile(args.profile, "coulomb")
            for n in range(l + 1, l + 1 + args.count):
                q = sqdt.coulomb_starred(profile, d, n, l)
                rows.append({"n": n, "l": l, "n_star": q.n_star, "n_s": q.n_s,
                             "energy": sqdt.sqdt_coulomb_energy(profile, d, n, l)})
            dim, prof = d, profile.name
    else:
        D, L = args.D, args.L
        count = args.count
        if args.n_max is not None:
            count = max(0, (args.n_max - L) // 2 + 1)
        if system == "oscillator":
            for k in range(count):
                qn = OscillatorQN(D, L + 2 * k, L)
                rows.append({"n": qn.N, "l": L, "energy": oscillator_energy(qn)})
            dim, prof = D, None
        else:
            profile = load_profile(args.profile, "oscillator")
            for k in range(count):
                N = L + 2 * k
                q = sqdt.oscillator_starred(profile, D, N, L)
                rows.append({"n": N, "l": L, "n_star": q.n_star, "n_s": q.n_s,
                             "energy": sqdt.sqdt_oscillator_energy(profile, D, N, L)})
            dim, prof = D, profile.name
        l = L
    payload = {"command": "spectrum", "system": system, "dim": dim, "l": l, "profile": prof, "rows": rows}
    emit(args, payload, rows)
    return EXIT_OK


def _parse_grid(text: str | None):
    if text is None:
        return None
    try:
        grid = np.array([float(v) for v in text.split(",") if v.strip()])
    except ValueError:
        raise DomainError(f"grid must be comma-separated numbers, got {text!r}") from None
    if grid.size == 0 or np.any(grid <= 0):
        raise DomainError("grid points must be positive")
    return grid


def cmd_wavefn(args) -> int:
    system = args.system
    if system == "coulomb":
        state = coulomb_state(CoulombQN(args.d, args.n, args.l))
    elif system == "oscillator":
        state = oscillator_state(OscillatorQN(args.D, args.N, args.L))
    elif system == "sqdt-coulomb":
        state = sqdt.sqdt_coulomb_state(load_profile(args.profile, "coulomb"), args.d, args.n, args.l)
    elif system == "sqdt-oscillator":
        state = sqdt.sqdt_oscillator_state(load_profile(args.profile, "oscillator"), args.D, args.N, args.L)
    elif system == "continuum":
        state = continuum.coulomb_continuum_wave(args.d, args.E, args.l, args.sign, args.repulsive)
    else:
        state = continuum.inverted_oscillator_wave(args.D, args.F, args.L, args.sign)
    grid = _parse_grid(args.grid)
    if grid is None:
        grid = standard_grid(state) if hasattr(state, "power") else np.geomspace(*state.span, 200)
    f, f1, _ = state.derivs(grid)
    rows = []
    for x, v, dv in zip(grid, np.atleast_1d(f), np.atleast_1d(f1)):
        row = {"x": float(x)}
        if np.iscomplexobj(f):
            row.update({"re": float(v.real), "im": float(v.imag)})
            if args.derivative:
                row.update({"d_re": float(dv.real), "d_im": float(dv.imag)})
        else:
            row["value"] = float(v)
            if args.derivative:
                row["derivative"] = float(dv)
        rows.append(row)
    emit(args, {"command": "wavefn", "state": state.label, "rows": rows}, rows)
    return EXIT_OK


def _map_profiles(args):
    if args.profile:
        cp = load_profile(args.profile, "coulomb")
    else:
        cp = sqdt.CoulombDefectProfile(j=args.j, tail=(args.i, args.delta), name="cli")
    if args.oscillator_profile:
        op = load_profile(args.oscillator_profile, "oscillator")
    else:
        op = sqdt.OscillatorDefectProfile(J=args.J, tail=(args.I, args.Delta), name="cli")
    return cp, op


def cmd_map(args) -> int:
    kind = args.kind
    if kind in ("continuum", "repulsive"):
        res = continuum.continuum_map(args.d, args.E, args.l, args.lam, args.sign, repulsive=kind == "repulsive")
        report = res.to_dict()
        passed = (res.transported_residual < CONTINUUM_RESIDUAL_TOL and res.ratio_error < CONTINUUM_RATIO_TOL
                  and (res.F < 0) == (kind == "repulsive"))
    else:
        if kind == "classic":
            result = mapping.classic_map(args.d, args.lam, args.n, args.l)
        elif kind == "three-dim":
            spec = mapping.three_dim_map(args.lam, args.which, n=args.n, l=args.l, coulomb_shift=args.coulomb_shift)
            result = mapping.general_map(spec, kind="three-dim")
        else:
            cp, op = _map_profiles(args)
            result = mapping.general_map(mapping.MapSpec(args.d, args.n, args.l, args.lam, cp, op))
        report = result.report.to_dict()
        passed = result.report.passed
    payload = {"command": "map", "kind": kind, "passed": passed, "report": report}
    flat = [{k: v for k, v in _flatten(report).items()}]
    emit(args, payload, flat, text=_text([{"key": k, "value": v} for k, v in _flatten(report).items()]))
    return EXIT_OK if passed else EXIT_CHECK


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, (list, tuple)):
            out[key] = ";".join(str(x) for x in v)
        else:
            out[key] = v
    return out


def cmd_table1(args) -> int:
    table = mapping.sodium_table(lam=args.lam)
    rows = [r.to_dict() for r in table]
    check = [{"row": r.l, "got": got, "expected": want, "match": ok}
             for r, (got, want, ok) in zip(table, mapping.table1_check(table))]
    passed = all(c["match"] for c in check)
    text = mapping.format_table(table) + "\n"
    if args.check:
        text += "\n".join(f"l={c['row']}: Delta {c['got']} expected {c['expected']} "
                          f"{'ok' if c['match'] else 'MISMATCH'}" for c in check) + "\n"
    payload = {"command": "table1", "rows": rows, "check": check, "passed": passed}
    emit(args, payload, rows, text=text)
    return EXIT_CHECK if args.check and not passed else EXIT_OK


def cmd_verify(args) -> int:
    names = list(suites.SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        if name == "susy" and (args.d is not None or args.l is not None):
            kw = {}
            if args.d is not None:
                kw["d_list"] = (args.d,)
            if args.l is not None:
                kw["l_max"] = args.l
            results.append(suites.susy_suite(**kw))
        elif name == "fd-oracle":
            kw = {"profile": load_profile(args.profile or "sodium", "coulomb")}
            if args.points is not None:
                kw["points"] = args.points
            if args.y_max is not None:
                kw["y_max"] = args.y_max
            results.append(suites.fd_oracle(**kw))
        else:
            results.append(suites.SUITES[name]())
    passed = all(r.passed for r in results)
    payload = {"command": "verify", "passed": passed, "suites": [r.to_dict() for r in results]}
    rows = [{"suite": r.name, **c.to_dict()} for r in results for c in r.checks]
    summary = [{"suite": r.name, "passed": r.passed, "checks": len(r.checks),
                "failures": sum(not c.passed for c in r.checks), "worst": r.worst(),
                "seconds": round(r.seconds, 3)} for r in results]
    emit(args, payload, rows, text=_text(summary))
    return EXIT_OK if passed else EXIT_CHECK


# ---------------------------------------------------------------- parser

def _common(p):
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--output", help="write to this path instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="radialmap",
                                     description="Coulomb and oscillator radial states and the maps between them.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="eigenvalue table")
    p.add_argument("system", choices=("coulomb", "oscillator", "sqdt-coulomb", "sqdt-oscillator"))
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--D", type=int, default=3)
    p.add_argument("--L", type=int, default=0)
    p.add_argument("--n-max", type=int, help="highest principal quantum number (n or N)")
    p.add_argument("--count", type=int, default=3)
    p.add_argument("--profile", help="preset name or profile file")
    _common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("wavefn", help="sampled radial state")
    p.add_argument("system", choices=("coulomb", "oscillator", "sqdt-coulomb", "sqdt-oscillator",
                                      "continuum", "inverted"))
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--D", type=int, default=3)
    p.add_argument("--N", type=int, default=0)
    p.add_argument("--L", type=int, default=0)
    p.add_argument("--E", type=float, default=1.0, help="continuum energy in E0 units")
    p.add_argument("--F", type=float, default=2.0, help="inverted-oscillator energy in F0 units")
    p.add_argument("--sign", type=int, choices=(1, -1), default=1)
    p.add_argument("--repulsive", action="store_true")
    p.add_argument("--profile")
    p.add_argument("--grid", help="comma-separated radii; default is the standard geometric grid")
    p.add_argument("--derivative", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_wavefn)

    p = sub.add_parser("map", help="transport a Coulomb state and compare with the oscillator target")
    p.add_argument("kind", choices=("classic", "general", "three-dim", "continuum", "repulsive"))
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--lambda", dest="lam", type=int, default=0)
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--i", type=int, default=0)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--J", type=int, default=0)
    p.add_argument("--I", type=int, default=0)
    p.add_argument("--Delta", type=float, default=0.0)
    p.add_argument("--profile", help="Coulomb profile (overrides --j/--i/--delta)")
    p.add_argument("--oscillator-profile", help="oscillator profile (overrides --J/--I/--Delta)")
    p.add_argument("--which", choices=mapping.THREE_DIM_KINDS, default="oscillator_exact")
    p.add_argument("--coulomb-shift", type=float, help="delta - i for --which custom")
    p.add_argument("--E", type=float, default=1.0)
    p.add_argument("--sign", type=int, choices=(1, -1), default=1)
    _common(p)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("table1", help="oscillator parameters matching the sodium defects")
    p.add_argument("--check", action="store_true", help="compare Delta with the expected values")
    p.add_argument("--lambda", dest="lam", type=int, default=1)
    _common(p)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=(*suites.SUITES, "all"))
    p.add_argument("--d", type=int, help="susy: restrict to this Coulomb dimension")
    p.add_argument("--l", type=int, help="susy: highest angular momentum")
    p.add_argument("--profile", help="fd-oracle: Coulomb profile (default sodium)")
    p.add_argument("--points", type=int, help="fd-oracle: grid points")
    p.add_argument("--y-max", type=float, help="fd-oracle: box size")
    _common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConsistencyError, DomainError) as exc:
        kind = "consistency error" if isinstance(exc, ConsistencyError) else "invalid input"
        print(f"radialmap: {kind}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (AccuracyError, SolverError) as exc:
        print(f"radialmap: numerical failure: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
