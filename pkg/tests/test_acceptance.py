"""One test per acceptance criterion; each prints a PASS/FAIL line."""
import pytest

from scissors.acceptance import CHECKS


@pytest.mark.parametrize("check", CHECKS, ids=[f"{i:02d}-{c.__name__[6:]}" for i, c in enumerate(CHECKS, 1)])
def test_criterion(check, capsys):
    result = check(0)
    with capsys.disabled():
        print(f"\n{'PASS' if result.passed else 'FAIL'}  {result.name}: {result.detail}")
    assert result.passed, result.detail
