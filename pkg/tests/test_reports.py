import json
from fractions import Fraction

import pytest

from core import __version__
from core.derivation_complex import h0_lie_algebra
from core.reports import (
    Certification,
    ResultRecord,
    dimension_answer,
    dimension_disagreement,
    emit_report,
    lie_answer,
    serialize_value,
)


def _record(**kwargs):
    return ResultRecord(
        query={"command": "aq", "window": "-3:0"},
        certification=Certification(window="-3:0", certified_degrees=[-3, -2, -1, 0]),
        routes=["der"],
        **kwargs,
    )


def test_serialize_value_writes_exact_rationals():
    assert serialize_value({1: Fraction(1, 2), "a": [Fraction(3), (Fraction(-2, 4),)]}) == {
        "1": "1/2",
        "a": ["3", ["-1/2"]],
    }


def test_dimension_answer_keeps_certified_degrees():
    answer = dimension_answer({-3: 1, -2: 1, -1: 0}, certified=[-2, -1])
    assert answer == {"dimensions": {"-2": 1, "-1": 0}}


def test_lie_answer_of_two_sphere(s2):
    answer = lie_answer(h0_lie_algebra(s2))
    assert answer["dimension"] == 1
    assert answer["grading"] == [0]
    assert answer["abelian"]
    assert answer["structure_constants"] == []
    assert answer["well_defined"]


def test_disagreement_lists_differing_degrees():
    tables = {"der": {-3: 1, -2: 1}, "harrison": {-3: 1, -2: 0}}
    assert dimension_disagreement(tables, [-3, -2]) == {
        "degrees": [-2],
        "tables": {"der": {"-3": 1, "-2": 1}, "harrison": {"-3": 1, "-2": 0}},
    }
    assert dimension_disagreement({"der": {-2: 1}, "harrison": {-2: 1}}, [-2]) is None


def test_json_report():
    record = _record(answer={**dimension_answer({-3: 1, -2: 1}), "scale": Fraction(3, 4)})
    payload = json.loads(emit_report(record, "json"))
    assert payload["answer"] == {"dimensions": {"-3": 1, "-2": 1}, "scale": "3/4"}
    assert payload["version"] == __version__
    assert payload["status"] == "ok"
    assert payload["certification"]["certified_degrees"] == [-3, -2, -1, 0]


def test_text_report_shows_tables_and_diff():
    tables = {"der": {-2: 1}, "harrison": {-2: 0}}
    record = _record(
        answer={"routes": {"der": {"-2": 1}, "harrison": {"-2": 0}}},
        status="disagreement",
        disagreement=dimension_disagreement(tables, [-2]),
    )
    text = emit_report(record, "text").decode("utf-8")
    assert "route der:" in text
    assert "diff:" in text
    assert "  H^-2: der=1, harrison=0" in text
    assert "certified degrees: [-3, -2, -1, 0]" in text


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_report(_record(), "yaml")
