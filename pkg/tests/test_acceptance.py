"""Acceptance suite: one test per verification claim, at stated tolerances.

Every check asserts exact values; the stated wall-clock budgets are enforced.
Run with ``pytest tests/test_acceptance.py -v`` for the per-criterion ledger
(one PASS/FAIL line each).
"""

from __future__ import annotations

import pytest

from geodex import verify


@pytest.fixture(scope="module")
def shared_ctx():
    return verify.VerificationContext()


@pytest.mark.parametrize(
    "claim",
    verify.ALL_CLAIMS,
    ids=[f"criterion_{fn._criterion:02d}_{fn._name.replace(' ', '_')}" for fn in verify.ALL_CLAIMS],
)
def test_criterion(claim, shared_ctx):
    result = verify.run_claim(claim, shared_ctx)
    print(result.line())
    assert result.passed, result.detail
    assert result.within_budget, (
        f"criterion {result.criterion} took {result.elapsed:.1f}s,"
        f" over the {result.budget:.0f}s budget"
    )
