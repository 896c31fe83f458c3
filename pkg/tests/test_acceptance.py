"""The acceptance gate: one test per frozen criterion, with time budgets.

Each parametrized line below is the pass/fail verdict for one criterion;
run_criterion folds a blown time budget into the failure itself.
"""

import pytest

from bioqm.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize(
    "number",
    range(1, len(CRITERIA) + 1),
    ids=[f"{k:02d}-{name.replace(' ', '-')}" for k, (name, _, _) in enumerate(CRITERIA, 1)],
)
def test_criterion(number):
    result = run_criterion(number)
    assert result.passed, result.line()
    assert result.elapsed <= result.limit, result.line()


def test_criterion_count():
    assert len(CRITERIA) == 13
