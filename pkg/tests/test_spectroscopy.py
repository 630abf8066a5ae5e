from dataclasses import replace
from types import SimpleNamespace

import pytest

from snhydrogen.constants import CODATA2018
from snhydrogen.errors import ContractError
from snhydrogen.spectroscopy import (
    EXPERIMENTAL_LEVELS_EV,
    EXPERIMENTAL_TRANSITIONS_EV,
    bohr_ratio_check,
    build_report,
    default_transitions,
    ionization_energy_estimate,
    ionization_gravity_relative_shift,
    perturbative_gravity_shift,
    transition_energies,
)

# published numerical level energies, eV
TABLE1 = {1: -13.593, 2: -3.3993, 3: -1.5109}
TABLE2 = {1: -1.2561, 2: -0.21601, 3: -0.074618}
TABLE3 = {(3, 2): -0.14139, (2, 1): -1.0400, (3, 1): -1.1814}


def fake_levels(table):
    return [SimpleNamespace(level=n, energy_ev=e, converged=True) for n, e in table.items()]


def test_experimental_values_verbatim():
    assert EXPERIMENTAL_LEVELS_EV == {1: -13.598, 2: -3.3996, 3: -1.5109}
    assert EXPERIMENTAL_TRANSITIONS_EV == {(3, 2): -1.8887, (2, 1): -10.199, (3, 1): -12.087}


def test_default_transition_order():
    assert default_transitions([1, 2, 3]) == [(3, 2), (2, 1), (3, 1)]
    assert default_transitions([1]) == []


def test_published_tables_are_consistent():
    gaps = transition_energies(fake_levels(TABLE2), list(TABLE3))
    for gap, expected in zip(gaps, TABLE3.values()):
        assert gap == pytest.approx(expected, abs=1e-4)


def test_telescoping():
    g32, g21, g31 = transition_energies(fake_levels(TABLE2), [(3, 2), (2, 1), (3, 1)])
    assert g31 == pytest.approx(g32 + g21, abs=1e-15)


def test_missing_level():
    with pytest.raises(ContractError):
        transition_energies(fake_levels({1: -1.0}), [(2, 1)])


def test_unconverged_level_rejected():
    levels = [SimpleNamespace(level=1, energy_ev=-1.0, converged=False)]
    with pytest.raises(ContractError):
        transition_energies(levels, [])


def test_bohr_ratio_plain_table():
    devs = bohr_ratio_check(fake_levels(TABLE1))
    assert len(devs) == 2
    assert all(d < 1e-3 for d in devs)
    assert devs[1] == pytest.approx(abs(-1.5109 * 9 / -13.593 - 1))


def test_bohr_ratio_self_interacting_table():
    devs = bohr_ratio_check(fake_levels(TABLE2))
    assert devs[0] == pytest.approx(0.3121, abs=1e-3)


def test_bohr_ratio_single_level():
    assert bohr_ratio_check(fake_levels({1: -1.0})) == []


def test_ionization_energy_rydberg():
    # Rydberg energy 13.605693122994 eV scaled by mu/m_e
    expected = -13.605693122994 / (1 + CODATA2018.m_e / CODATA2018.m_p)
    e1 = ionization_energy_estimate(CODATA2018, 1.0, 1)
    assert e1 == pytest.approx(expected, rel=1e-8)
    assert e1 == pytest.approx(-13.598, rel=1e-4)


def test_ionization_energy_scaling():
    e1 = ionization_energy_estimate(CODATA2018, 1.0, 1)
    assert ionization_energy_estimate(CODATA2018, 0.3, 1) == pytest.approx(0.09 * e1, rel=1e-14)
    assert ionization_energy_estimate(CODATA2018, 0.3, 1) == pytest.approx(-1.22, abs=0.01)
    assert ionization_energy_estimate(CODATA2018, 1.0, 2) == pytest.approx(e1 / 4, rel=1e-14)
    with pytest.raises(ContractError):
        ionization_energy_estimate(CODATA2018, 0.0, 1)


def test_gravity_shift_hand_value():
    # 2 * 6.67430e-11 * 1.67262192369e-27 * 9.1093837015e-31 / 2.3070775523e-28
    assert perturbative_gravity_shift(CODATA2018) == pytest.approx(8.8158e-40, rel=1e-4)


def test_gravity_shift_linear_in_G():
    doubled = replace(CODATA2018, G=2 * CODATA2018.G)
    assert perturbative_gravity_shift(doubled) == 2 * perturbative_gravity_shift(CODATA2018)
    assert perturbative_gravity_shift(replace(CODATA2018, G=0.0)) == 0.0


def test_exact_path_keeps_gravity():
    plain = ionization_energy_estimate(CODATA2018, include_gravity=False)
    with_g = ionization_energy_estimate(CODATA2018, include_gravity=True)
    assert plain == with_g  # invisible in the absolute double value
    shift = ionization_gravity_relative_shift(CODATA2018)
    assert shift == pytest.approx(perturbative_gravity_shift(CODATA2018), rel=1e-6)
    assert shift > 0


def test_build_report_uses_subtraction():
    levels = fake_levels(TABLE2)
    report = build_report(levels)
    assert [(t.n_initial, t.n_final) for t in report.transitions] == [(3, 2), (2, 1), (3, 1)]
    for t in report.transitions:
        assert t.gap_ev == TABLE2[t.n_final] - TABLE2[t.n_initial]
        assert t.experimental_gap_ev == EXPERIMENTAL_TRANSITIONS_EV[(t.n_initial, t.n_final)]
    assert [n for n, _ in report.bohr_deviations] == [2, 3]
    assert report.levels[0].experimental_ev == -13.598
    assert report.gravity_ratio == perturbative_gravity_shift(CODATA2018)
