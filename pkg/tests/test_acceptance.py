"""Acceptance gate: every bundled verification check must pass.

Each check prints one PASS/FAIL line with its measured detail so the
full gate is readable from the pytest output (-s or on failure).
"""

import pytest

from flatfront.acceptance import ALL_CHECKS, run_all

RESULTS = run_all()


def test_gate_has_all_checks():
    assert len(RESULTS) == len(ALL_CHECKS) == 11


@pytest.mark.parametrize("result", RESULTS, ids=[r.name for r in RESULTS])
def test_acceptance(result):
    print(result.line())
    assert result.passed, result.line()
