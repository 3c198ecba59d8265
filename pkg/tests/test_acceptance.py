"""One test per acceptance criterion; each prints a PASS/FAIL verdict line.

Run alone with ``pytest tests/test_acceptance.py -v`` or via ``dezaswitch reproduce-paper``.
"""

import pytest

from dezaswitch import scenarios


def _run(capsys, scenario):
    res = scenario()
    with capsys.disabled():
        print()
        print(res.verdict())
        for line in res.lines:
            print(line)
    assert res.passed, "; ".join(res.failures) or f"over budget: {res.seconds:.2f}s > {res.budget:g}s"


def test_criterion_01_t7_switching_spectra(capsys):
    _run(capsys, scenarios.t7_spectra_scenario)


def test_criterion_02_t8_transpose_and_central(capsys):
    _run(capsys, scenarios.t8_symmetries_scenario)


def test_criterion_03_square_identities(capsys):
    _run(capsys, scenarios.square_identity_scenario)


def test_criterion_04_chain_on_l2_6(capsys):
    _run(capsys, scenarios.chain_scenario)


def test_criterion_05_m_plus_p(capsys):
    _run(capsys, scenarios.add_perm_scenario)


def test_criterion_06_p_times_m_plus_i(capsys):
    _run(capsys, scenarios.perm_shift_scenario)


def test_criterion_07_child_spectrum_prediction(capsys):
    _run(capsys, scenarios.child_spectra_scenario)


def test_criterion_08_block_identity_suite(capsys):
    _run(capsys, scenarios.block_identity_scenario)


def test_criterion_09_degenerate_and_preconditions(capsys):
    _run(capsys, scenarios.degenerate_scenario)


def test_criterion_10_oracle_equivalence(capsys):
    _run(capsys, scenarios.oracle_scenario)
