import csv
import io
import json
import subprocess
import sys

import pytest

from radialmap import cli, sqdt
from radialmap.errors import DomainError


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_spectrum_coulomb(capsys):
    code, out, _ = run(capsys, "spectrum", "coulomb", "--d", "3", "--l", "0", "--n-max", "3")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"command", "system", "dim", "l", "profile", "rows"}
    assert [r["energy"] for r in data["rows"]] == pytest.approx([-0.25, -1 / 16, -1 / 36])


def test_spectrum_sodium_csv(capsys):
    code, out, _ = run(capsys, "spectrum", "sqdt-coulomb", "--d", "3", "--l", "0",
                       "--profile", "sodium", "--count", "3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    want = [-1 / (4 * x * x) for x in (1.65, 2.65, 3.65)]
    assert [float(r["energy"]) for r in rows] == pytest.approx(want, rel=1e-14)


def test_spectrum_sqdt_oscillator_profile_file(capsys, tmp_path):
    path = tmp_path / "osc.txt"
    path.write_text("# test profile\nJ = 1\ntail = 0 0.0\n[rows]\n0 1 0.3   # L I Delta\n")
    code, out, _ = run(capsys, "spectrum", "sqdt-oscillator", "--D", "3", "--L", "0",
                       "--profile", str(path), "--count", "3")
    E = [r["energy"] for r in json.loads(out)["rows"]]
    assert E[1] - E[0] == pytest.approx(4.0) and E[2] - E[1] == pytest.approx(4.0)


def test_wavefn_hydrogen(capsys):
    code, out, _ = run(capsys, "wavefn", "coulomb", "--grid", "1,2,3")
    vals = [r["value"] for r in json.loads(out)["rows"]]
    assert vals[1] == pytest.approx(0.5202600950228889, rel=1e-14)


def test_wavefn_complex(capsys):
    code, out, _ = run(capsys, "wavefn", "inverted", "--grid", "1,2", "--derivative")
    row = json.loads(out)["rows"][0]
    assert set(row) == {"x", "re", "im", "d_re", "d_im"}


def test_wavefn_default_grid(capsys):
    code, out, _ = run(capsys, "wavefn", "oscillator", "--format", "csv")
    assert len(out.strip().splitlines()) == 201


def test_map_classic(capsys):
    code, out, _ = run(capsys, "map", "classic", "--d", "3", "--lambda", "0", "--n", "2", "--l", "1")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    rep = data["report"]
    for key in ("kind", "lam", "coulomb", "oscillator", "K", "norm_defect", "max_pointwise_error",
                "energy_coulomb", "energy_oscillator", "energy_residual", "relation_residuals", "notes"):
        assert key in rep
    assert rep["oscillator"]["dim"] == 4 and rep["max_pointwise_error"] < 1e-10


def test_map_general_odd_dimension(capsys):
    code, out, _ = run(capsys, "map", "general", "--d", "3", "--lambda", "1", "--J", "1",
                       "--Delta", "0.5", "--n", "3", "--l", "1")
    assert code == 0
    assert json.loads(out)["report"]["oscillator"]["dim_star"] == 3


def test_map_inconsistent_exits_two(capsys):
    code, out, err = run(capsys, "map", "general", "--d", "3", "--lambda", "1", "--J", "1")
    assert code == 2 and "consistency" in err


def test_map_range_violation_exits_two(capsys):
    code, _, err = run(capsys, "map", "general", "--d", "3", "--delta", "1.2")
    assert code == 2 and "violated" in err


def test_map_continuum_and_repulsive(capsys):
    code, out, _ = run(capsys, "map", "continuum", "--E", "1", "--lambda", "1")
    assert code == 0 and json.loads(out)["report"]["F"] == pytest.approx(2.0)
    code, out, _ = run(capsys, "map", "repulsive", "--E", "4")
    assert code == 0 and json.loads(out)["report"]["F"] == pytest.approx(-1.0)


def test_map_three_dim_text(capsys):
    code, out, _ = run(capsys, "map", "three-dim", "--lambda", "1", "--which", "oscillator_exact",
                       "--n", "2", "--format", "text")
    assert code == 0 and "oscillator.n_star" in out


def test_table1(capsys):
    code, out, _ = run(capsys, "table1", "--check")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert [c["got"] for c in data["check"]] == ["1.20", "1.218", "0.52", "0.50", "0.5"]
    code, out, _ = run(capsys, "table1", "--format", "text")
    assert "1.218" in out


def test_table1_check_failure_sets_exit(capsys):
    code, out, _ = run(capsys, "table1", "--check", "--lambda", "0")
    assert code == 1


def test_verify_susy(capsys):
    code, out, _ = run(capsys, "verify", "susy", "--d", "3", "--l", "0")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    suite = data["suites"][0]
    assert set(suite) == {"suite", "passed", "seconds", "failures", "checks", "details"}


def test_verify_fd_oracle(capsys):
    code, out, _ = run(capsys, "verify", "fd-oracle", "--profile", "sodium")
    data = json.loads(out)
    assert code == 0
    rows = data["suites"][0]["details"]["sodium"]["rows"]
    assert max(r["rel_error"] for r in rows) < 1e-4


def test_verify_failure_lists_failures(capsys):
    code, out, _ = run(capsys, "verify", "fd-oracle", "--points", "200")
    data = json.loads(out)
    assert code == 1 and data["suites"][0]["failures"]


def test_output_file(capsys, tmp_path):
    target = tmp_path / "t.csv"
    code, out, _ = run(capsys, "table1", "--format", "csv", "--output", str(target))
    assert out == "" and target.read_text().startswith("l,i,n_min")


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as exc:
        cli.main(["spectrum", "helium"])
    assert exc.value.code == 2


def test_profile_parser():
    prof = cli.parse_profile_text("name = x\nj = 1\n[rows]\n0 1 0.4\n1 0 0.2\n")
    assert isinstance(prof, sqdt.CoulombDefectProfile)
    assert prof.j == 1 and prof.defect(0) == (1, 0.4) and prof.name == "x"
    prof = cli.parse_profile_text("system = oscillator\n[rows]\n1 2 1.2\n")
    assert isinstance(prof, sqdt.OscillatorDefectProfile)
    for bad in ("[rows]\n0 1 2 0.3\n", "j = 1\nbogus = 3\n", "junk line\n", "[other]\n", "tail = 1\n"):
        with pytest.raises(DomainError):
            cli.parse_profile_text(bad)


def test_load_profile_type_mismatch(tmp_path):
    with pytest.raises(DomainError):
        cli.load_profile("sodium", "oscillator")
    with pytest.raises(DomainError):
        cli.load_profile(str(tmp_path / "missing.txt"), "coulomb")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "radialmap", "table1", "--check", "--format", "text"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "1.218" in res.stdout
