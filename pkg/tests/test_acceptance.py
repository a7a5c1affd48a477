"""The eleven acceptance criteria, one suite each.

Run with ``pytest tests/test_acceptance.py`` (the PASS/FAIL lines appear in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import sys

import pytest

from obstruct.suites import run_suite

CRITERIA = [
    (1, "orthogonality"),
    (2, "reduction"),
    (3, "involution"),
    (4, "base-chain"),
    (5, "alpha-beta"),
    (6, "groebner"),
    (7, "lifting"),
    (8, "star"),
    (9, "subtraction"),
    (10, "combine"),
    (11, "mutation"),
]

LINES = {}
SECONDS = {}


def criterion_line(number, result):
    return f"criterion {number:2d} {result.line()} ({result.seconds:.2f}s)"


@pytest.mark.parametrize("number,name", CRITERIA, ids=[n for _, n in CRITERIA])
def test_criterion(number, name):
    result = run_suite(name, seed=0)
    line = criterion_line(number, result)
    LINES[number] = line
    SECONDS[number] = result.seconds
    print(line)
    assert result.passed, line


def test_total_time_budget():
    # runs after the criteria above (file order); all suites together stay under two minutes
    if len(SECONDS) < len(CRITERIA):
        pytest.skip("needs the full acceptance run")
    assert sum(SECONDS.values()) < 120


if __name__ == "__main__":
    failed = 0
    for number, name in CRITERIA:
        res = run_suite(name, seed=0)
        print(criterion_line(number, res), flush=True)
        failed += not res.passed
    sys.exit(1 if failed else 0)
