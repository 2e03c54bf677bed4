"""Acceptance suite: one pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the summary lines.
"""

import pytest

from paramodular import verify

CHECKS = {fn.__name__: fn for fn in verify.ALL_CHECKS}


@pytest.mark.parametrize("name", list(CHECKS))
def test_criterion(name, capsys):
    check = CHECKS[name]()
    with capsys.disabled():
        print("\n" + check.line())
    assert check.passed, check.details
