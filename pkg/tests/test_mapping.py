from decimal import Decimal

import numpy as np
import pytest

from radialmap import mapping, sqdt
from radialmap.errors import ConsistencyError, DomainError
from radialmap.systems import PhysicalScales


def test_classic_example():
    res = mapping.classic_map(3, 0, 2, 1)
    o = res.report.oscillator
    assert (o["dim"], o["n"], o["l"]) == (4, 2, 2)
    assert res.report.K == pytest.approx(4.0)
    assert res.report.passed


@pytest.mark.parametrize("d", [3, 4, 5])
def test_classic_map_all_lambda(d):
    for D, lam in mapping.classic_map_range(d):
        for n in (1, 3):
            for l in range(n):
                rep = mapping.classic_map(d, lam, n, l).report
                assert rep.max_pointwise_error < 1e-10
                assert rep.energy_residual < 1e-12


def test_classic_map_range_three():
    assert mapping.classic_map_range(3) == [(2, 1), (4, 0)]
    assert (6, -1) in mapping.classic_map_range(3, l=1, full_spectrum=False)


def test_negative_lambda_at_fixed_l():
    rep = mapping.classic_map(3, -2, 2, 1).report
    assert rep.oscillator["dim"] == 8 and rep.oscillator["l"] == 0
    assert rep.passed


def test_scales_are_carried():
    sc = PhysicalScales(r0=0.7, R0=1.9, E0=1.0, F0=1.0)
    assert mapping.classic_map(3, 1, 2, 1, sc).report.max_pointwise_error < 1e-10


def test_a_equals_two_a_enforced():
    cp = sqdt.CoulombDefectProfile(j=0, tail=(1, 0.0))
    op = sqdt.OscillatorDefectProfile(J=0, tail=(1, 0.0))
    with pytest.raises(ConsistencyError, match="A = 2a"):
        mapping.MapSpec(3, 1, 0, 0, cp, op)


def test_odd_dimension():
    rep = mapping.general_map(mapping.odd_dimension_spec(3, 1)).report
    assert rep.oscillator["dim_star"] == 3
    assert rep.max_pointwise_error < 1e-10 and rep.energy_residual < 1e-12
    assert rep.notes


def test_split_shift():
    assert mapping.split_shift(-0.65) == (1, pytest.approx(0.35))
    assert mapping.split_shift(0.25) == (0, 0.25)
    assert mapping.split_shift(-2.0) == (2, 0.0)


def test_three_dim_examples():
    spec = mapping.three_dim_map(1, "oscillator_exact", n=3, l=0)
    rep = mapping.general_map(spec).report
    assert rep.coulomb["n_star"] == pytest.approx(3.25)
    assert rep.energy_coulomb == pytest.approx(-1 / 42.25)
    assert rep.energy_oscillator == pytest.approx(14.0)
    spec = mapping.three_dim_map(0, "coulomb_exact", n=3, l=0)
    rep = mapping.general_map(spec).report
    assert rep.oscillator["n_star"] == pytest.approx(4.5)
    assert rep.oscillator["l_star"] == pytest.approx(0.5)
    with pytest.raises(DomainError):
        mapping.three_dim_map(2, "coulomb_exact")
    with pytest.raises(DomainError):
        mapping.three_dim_map(0, "custom")


def test_table1_rows():
    table = mapping.sodium_table()
    assert [r.Delta for r in table] == ["1.20", "1.218", "0.52", "0.50", "0.5"]
    assert [r.L for r in table] == [1, 3, 5, 7, 9]
    assert [r.I for r in table] == [2, 1, 0, 0, 0]
    for r in table:
        lhs = Decimal(r.Delta) - r.I
        rhs = 2 * (Decimal(r.delta) - r.i) + 1 - Decimal("0.5")
        assert lhs == rhs
    text = mapping.format_table(table)
    assert "1.218" in text and ">=l+1" in text
