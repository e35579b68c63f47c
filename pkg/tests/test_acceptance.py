"""Acceptance gate: every criterion at its pinned tolerance.

Each test prints one PASS/FAIL line per underlying check with the measured
residual, so `pytest -s tests/test_acceptance.py` doubles as the report.
"""

import math

import numpy as np
import pytest

from caustics import envelope, verify


def _run_criterion(key):
    report = verify.run_verify(verify.CRITERIA[key])
    for c in report["checks"]:
        status = "PASS" if c["passed"] else "FAIL"
        print(
            f'\n{status} [{key}] {c["name"]}: residual {c["residual"]:.3e} '
            f'(tol {c["tolerance"]:.0e}) {c["detail"]}',
            end="",
        )
    assert report["all_passed"], f"criterion {key} failed: {report}"


def test_criterion_1_coffee_cup():
    _run_criterion("1-coffee-cup")


def test_criterion_2_mirror_equation():
    _run_criterion("2-mirror-equation")


def test_criterion_3_parabola():
    _run_criterion("3-parabola")


def test_criterion_4_deltoid():
    _run_criterion("4-deltoid")


def test_criterion_5_circle_radiants():
    _run_criterion("5-circle-radiants")


def test_criterion_6_oracle_equivalence():
    _run_criterion("6-oracle-equivalence")


def test_criterion_7_rolling_invariants():
    _run_criterion("7-rolling-invariants")


def test_criterion_8_rates_and_identities():
    _run_criterion("8-rates-and-identities")


def test_verify_rejects_empty_selection():
    with pytest.raises(ValueError, match="nothing to verify"):
        verify.run_verify([])
    with pytest.raises(ValueError, match="unknown checks"):
        verify.run_verify(["not_a_check"])


def test_verify_catches_perturbed_envelope(monkeypatch):
    # mutation sanity: damp the normal coefficient of the envelope formula
    # by 1% and the deltoid check must fail
    real = envelope.second_envelope

    def perturbed(sample, R, delta):
        out = real(sample, R, delta)
        wrong = (
            sample.pos
            + R * (1.0 + 0.99 * math.cos(2.0 * delta)) * sample.N_left
            + R * math.sin(2.0 * delta) * sample.T
        )
        out.beta = np.asarray(wrong)
        return out

    monkeypatch.setattr(envelope, "second_envelope", perturbed)
    report = verify.run_verify(["deltoid_beta"])
    assert not report["all_passed"]
