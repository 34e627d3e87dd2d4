import io
import json
from fractions import Fraction

import pytest

from conftest import diagonal_spec, qp2

import nicholscy
from nicholscy import analyze, builtin, emit_report, parse_input
from nicholscy.errors import (
    BadFamilyParamsError,
    BadScalarError,
    DimensionMismatchError,
    ParseError,
)
from nicholscy.report import parse_scalar, validate_document

F = Fraction


def plain_doc():
    return {
        "name": "plane",
        "dimension": 2,
        "braiding": [
            ["1", "0", "0", "0"],
            ["0", "0", "2/4", "0"],
            ["0", "2", "0", "0"],
            ["0", "0", "0", "1"],
        ],
    }


def test_scalar_grammar():
    assert parse_scalar("3/6") == F(1, 2)
    assert parse_scalar("-7") == F(-7)
    assert parse_scalar(5) == F(5)
    for bad in (True, False, 0.5, "1.5", "1/-2", "1/0", "--1", "", None, [1]):
        with pytest.raises(BadScalarError):
            parse_scalar(bad)


def test_parse_accepts_dict_text_bytes_and_files():
    doc = plain_doc()
    text = json.dumps(doc)
    for source in (doc, text, text.encode(), io.StringIO(text)):
        spec = parse_input(source)
        assert spec.name == "plane"
        assert spec.n == 2
        assert spec.table[1][2] == F(1, 2)


def test_document_canonicalizes_scalars():
    spec = parse_input(plain_doc())
    doc = spec.document()
    assert doc["braiding"][1][2] == "1/2"
    assert "options" not in doc
    assert spec.checksum() == parse_input(doc).checksum()


def test_checksum_tracks_content():
    a = parse_input(plain_doc())
    changed = plain_doc()
    changed["braiding"][0][0] = "2"
    assert a.checksum() != parse_input(changed).checksum()
    renamed = plain_doc()
    renamed["name"] = "other"
    assert a.checksum() != parse_input(renamed).checksum()


def test_parse_rejections():
    with pytest.raises(ParseError):
        parse_input("not json")
    with pytest.raises(ParseError):
        parse_input({"dimension": 2})
    with pytest.raises(DimensionMismatchError):
        parse_input({"name": "x", "dimension": 3, "braiding": [["1"]]})
    bad_rows = plain_doc()
    bad_rows["braiding"] = bad_rows["braiding"][:3]
    with pytest.raises(DimensionMismatchError):
        parse_input(bad_rows)
    extra = plain_doc()
    extra["color"] = "blue"
    with pytest.raises(ParseError):
        parse_input(extra)
    bad_opt = plain_doc()
    bad_opt["options"] = {"cap": 1}
    with pytest.raises(ParseError):
        parse_input(bad_opt)
    bad_conv = plain_doc()
    bad_conv["options"] = {"convention": "rows"}
    with pytest.raises(ParseError):
        parse_input(bad_conv)
    unknown_opt = plain_doc()
    unknown_opt["options"] = {"threads": 4}
    with pytest.raises(ParseError):
        parse_input(unknown_opt)


def test_family_documents_expand():
    spec = parse_input({"family": "diagonal", "qmatrix": [["1", "3"], ["1/3", "1"]]})
    assert spec.n == 2
    assert spec.table[1][2] == F(3)
    with pytest.raises(BadFamilyParamsError):
        parse_input({"family": "diagonal", "qmatrix": [["1", "2"], ["2", "1"]]})
    with pytest.raises(BadFamilyParamsError):
        parse_input({"family": "diagonal", "qmatrix": [["2", "1"], ["1", "2"]]})
    with pytest.raises(BadFamilyParamsError):
        parse_input({"family": "nonesuch"})


def test_builtin_accepts_bare_qmatrix():
    spec = builtin("diagonal", [["1", "2"], ["1/2", "1"]])
    assert spec.table[1][2] == F(2)


def test_validate_document_happy_and_sad():
    ok = validate_document(qp2(2))
    assert ok["valid"] and ok["q"] == "1"
    assert ok["braid_equation"] and ok["rigidity"]
    assert ok["failure"] is None

    bad = validate_document(
        parse_input(
            {
                "name": "bad",
                "dimension": 2,
                "braiding": [
                    ["1", "0", "0", "0"],
                    ["0", "0", "2", "0"],
                    ["0", "1/2", "0", "0"],
                    ["0", "0", "0", "2"],
                ],
            }
        )
    )
    assert not bad["valid"]
    assert bad["failure"]["code"] == "NotHecke"
    assert bad["q"] is None


def test_wrong_label_hint_is_rejected():
    doc = plain_doc()
    doc["label"] = "5"
    rep = analyze(parse_input(doc))
    assert not rep.completed
    assert rep.failed_stage == "label"
    assert rep.failure["code"] == "NotHecke"


def test_analyze_report_fields_and_determinism():
    rep1 = analyze(qp2(2), cap=5)
    rep2 = analyze(qp2(2), cap=5)
    assert rep1.completed
    assert rep1.to_dict()["version"] == nicholscy.__version__
    assert rep1.cap == 5
    assert rep1.q == "1"
    assert rep1.gldim == 2
    assert rep1.validation == {"braid_equation": True, "rigidity": True, "label": "1"}
    assert rep1.relations == [["0", "1", "-2", "0"]]
    assert rep1.hilbert is True
    assert rep1.koszul["exact"] is True
    assert rep1.as_regular["ok"] is True
    assert rep1.frt == {
        "rtt": True,
        "h_linearity": True,
        "i_stability": True,
        "k_stability": True,
    }
    assert rep1.D == [["2", "0"], ["0", "1/2"]]
    assert rep1.phi == [["-2", "0"], ["0", "-1/2"]]
    assert rep1.nakayama_deg1 == [["-2", "0"], ["0", "-1/2"]]
    assert rep1.oracle["agreement"] is True
    assert rep1.is_cy is False
    assert rep1.descriptor["text"] == "_phi R[2](-2)"
    assert any("cap" in c for c in rep1.caveats)
    assert emit_report(rep1, "json") == emit_report(rep2, "json")


def test_emitted_json_is_sorted_and_parseable():
    rep = analyze(qp2(1), cap=4)
    blob = emit_report(rep, "json")
    data = json.loads(blob)
    assert list(data) == sorted(data)
    assert data["is_cy"] is True
    assert data["descriptor"]["text"] == "R[2](-2)"
    assert data["input"]["braiding"][1][2] == "1"


def test_text_report_mentions_the_verdict():
    rep = analyze(qp2(2), cap=4)
    text = emit_report(rep, "text").decode()
    assert "CALABI-YAU: no" in text
    assert "_phi R[2](-2)" in text
    assert "gldim" in text

    good = emit_report(analyze(qp2(1), cap=4), "text").decode()
    assert "CALABI-YAU: yes (dimension 2)" in good


def test_transpose_convention_recovers_the_standard_reading():
    spec = diagonal_spec([["1", "2"], ["1/2", "1"]])
    table = spec.document()["braiding"]
    flipped = [[table[r][c] for r in range(4)] for c in range(4)]
    doc = {
        "name": "flipped",
        "dimension": 2,
        "braiding": flipped,
        "options": {"convention": "transpose"},
    }
    rep_std = analyze(spec, cap=4)
    rep_flip = analyze(parse_input(doc), cap=4)
    assert rep_flip.convention == "transpose"
    assert rep_flip.completed
    assert rep_flip.D == rep_std.D
    assert rep_flip.dims_dual == rep_std.dims_dual


def test_rejected_report_still_serializes():
    rep = analyze(parse_input({"name": "mi", "dimension": 1, "braiding": [["-1"]]}))
    assert not rep.completed
    assert rep.failed_stage == "label"
    assert rep.failure["code"] == "LabelAmbiguous"
    assert rep.D is None and rep.phi is None and rep.oracle is None
    data = json.loads(emit_report(rep, "json"))
    assert data["completed"] is False
    text = emit_report(rep, "text").decode()
    assert "LabelAmbiguous" in text
