import pytest

from obstruct import suites
from obstruct.errors import UnknownSuite
from obstruct.suites import SuiteResult, run_suite


def test_unknown():
    with pytest.raises(UnknownSuite):
        run_suite("unknown-suite")


def test_crash_reported_as_failure(monkeypatch):
    def boom(seed=0):
        raise RuntimeError("kaput")

    monkeypatch.setitem(suites.SUITES, "boom", boom)
    res = run_suite("boom")
    assert not res.passed and "kaput" in res.line()


def test_empty_result_does_not_pass():
    assert not SuiteResult("empty").passed


def test_other_seed():
    assert run_suite("alpha-beta", seed=5).passed
    assert run_suite("subtraction", seed=3).passed


def test_json_summary():
    res = run_suite("base-chain")
    d = res.to_json()
    assert d["passed"] and d["checks"] == res.checks and d["name"] == "base-chain"
