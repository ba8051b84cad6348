"""One test per acceptance criterion; each prints its PASS/FAIL line."""

import pytest

from snfpowers.acceptance import SUITES, run_suite

RESULT_LINES: list[str] = []


@pytest.mark.acceptance
@pytest.mark.parametrize("name", list(SUITES), ids=[f"c{SUITES[n][0]:02d}-{n}" for n in SUITES])
def test_criterion(name):
    res = run_suite(name)
    print(res.line())
    RESULT_LINES.append(res.line())
    assert res.passed, res.detail
