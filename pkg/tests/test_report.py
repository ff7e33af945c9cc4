"""Отчёты прогонов и коды выхода."""

import json
from fractions import Fraction

import pytest

from utils.report import EXIT_CODES, RunReport, Verdict, dumps, merge_verdicts, strip_timing


def test_fail_needs_witness():
    with pytest.raises(ValueError):
        RunReport("verify-lemma", {}, Verdict.FAIL)
    report = RunReport("verify-lemma", {}, Verdict.FAIL, witness={"v1": [0]})
    assert report.exit_code == 1


def test_error_needs_message():
    with pytest.raises(ValueError):
        RunReport("classify", {}, Verdict.ERROR)
    report = RunReport.error("classify", {"d": 8}, "d вне {9, 10}")
    assert report.exit_code == 2
    assert report.to_dict()["message"] == "d вне {9, 10}"


def test_exit_codes():
    assert EXIT_CODES == {Verdict.PASS: 0, Verdict.FAIL: 1, Verdict.ERROR: 2}
    assert RunReport("catalog", {}, "PASS").verdict is Verdict.PASS


def test_merge_verdicts():
    assert merge_verdicts([]) is Verdict.PASS
    assert merge_verdicts([Verdict.PASS, Verdict.FAIL]) is Verdict.FAIL
    assert merge_verdicts([Verdict.FAIL, Verdict.ERROR, Verdict.PASS]) is Verdict.ERROR


def test_strip_timing_is_recursive():
    data = {"wall_time_ms": 5, "details": {"runs": [{"wall_time_ms": 3, "x": 1}], "created_at": "now"}}
    assert strip_timing(data) == {"details": {"runs": [{"x": 1}]}}


def test_dumps_is_stable_and_handles_sets():
    text = dumps({"b": frozenset({2, 1}), "a": Verdict.FAIL})
    assert json.loads(text) == {"a": "FAIL", "b": [1, 2]}
    assert text.index('"a"') < text.index('"b"')
    with pytest.raises(TypeError):
        dumps({"x": Fraction(1, 2)})


def test_optional_fields_are_omitted():
    data = RunReport("catalog", {}, Verdict.PASS, details={"n": 1}).to_dict()
    assert "seed" not in data and "witness" not in data and "message" not in data
    assert RunReport("reducible", {}, Verdict.PASS, seed=0).to_dict()["seed"] == 0
