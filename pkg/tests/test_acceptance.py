"""One test per acceptance criterion; the PASS/FAIL lines are repeated in the terminal summary."""

import pytest

from algkit.acceptance import CHECKS, run_check

RESULTS = []


@pytest.mark.parametrize("number", [num for num, _, _ in CHECKS], ids=lambda n: f"criterion_{n:02d}")
def test_criterion(number):
    result = run_check(number, seed=0)
    RESULTS.append(result)
    print(result.line())
    assert result.passed, result.line()


def test_registry_is_complete():
    assert sorted(num for num, _, _ in CHECKS) == list(range(1, 15))
