"""Tests for JSON input documents."""

import io
import json
from fractions import Fraction

import pytest

from hs_trace_tool.hs_document import DocumentFormatError, InputDocument, parse_matrix
from hs_trace_tool.hs_matrix import Matrix
from hs_trace_tool.hs_scalars import FLOAT, DimensionMismatchError

from conftest import mat

PAIR = {
    "n": 2,
    "mode": "rational",
    "matrices": [[["1", "2"], ["3", "4"]], [["0", "1/2"], ["-1", "0"]]],
    "seed": 42,
}


def test_parse_pair():
    document = InputDocument.from_text(json.dumps(PAIR))
    assert document.n == 2
    assert document.seed == 42
    assert document.matrices[1] == mat([[0, "1/2"], [-1, 0]])
    assert document.to_dict() == PAIR
    assert document.endo_tuple().m == 2


def test_integer_json_numbers_are_accepted():
    document = InputDocument.from_dict({"n": 1, "matrices": [[[3]]]})
    assert document.matrices[0][0, 0] == Fraction(3)
    assert document.mode == "rational"


def test_float_mode():
    document = InputDocument.from_dict({"n": 1, "mode": "float", "matrices": [[[1.5]]]})
    assert document.matrices[0][0, 0] == 1.5
    assert InputDocument.from_dict({"n": 1, "matrices": [[["1/4"]]]}, default_mode=FLOAT).matrices[0][0, 0] == 0.25


@pytest.mark.parametrize("data", [
    [1, 2],
    {"n": 0, "matrices": []},
    {"n": True, "matrices": []},
    {"n": 2, "mode": "complex", "matrices": []},
    {"n": 1, "matrices": "nope"},
    {"n": 1, "matrices": [[["1/0"]]]},
    {"n": 1, "matrices": [[[1.5]]]},
    {"n": 1, "matrices": [[["1"]]], "seed": -1},
    {"n": 1, "matrices": [[["1"]]], "seed": 2 ** 64},
    {"n": 1, "matrices": [[["1"]]], "seed": "7"},
])
def test_invalid_documents(data):
    with pytest.raises(DocumentFormatError):
        InputDocument.from_dict(data)


def test_invalid_json():
    with pytest.raises(DocumentFormatError, match="Invalid JSON"):
        InputDocument.from_text("{not json")


def test_wrong_shape_is_a_dimension_error():
    with pytest.raises(DimensionMismatchError, match="expected 2x2"):
        parse_matrix([["1", "2", "3"], ["4", "5", "6"]], 2)
    with pytest.raises(DimensionMismatchError):
        InputDocument.from_dict({"n": 2, "matrices": [[["1"]]]})


def test_require_count():
    document = InputDocument.from_dict(PAIR)
    assert document.require_count(2, size=2) is document
    assert document.require_count(1, at_least=True) is document
    with pytest.raises(DimensionMismatchError, match="exactly 3"):
        document.require_count(3)
    with pytest.raises(DimensionMismatchError):
        document.require_count(2, size=3)
    with pytest.raises(DimensionMismatchError):
        InputDocument(n=3, matrices=[Matrix.identity(3)]).endo_tuple()


def test_conjugator():
    document = InputDocument.from_dict(dict(PAIR, conjugator=[["1", "1"], ["0", "1"]]))
    assert document.conjugator == mat([[1, 1], [0, 1]])
    assert document.to_dict()["conjugator"] == [["1", "1"], ["0", "1"]]


def test_load_from_file_and_stdin(tmp_path, monkeypatch):
    path = tmp_path / "pair.json"
    path.write_text(json.dumps(PAIR), encoding="utf-8")
    assert InputDocument.load(str(path)).n == 2

    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(PAIR)))
    assert InputDocument.load("-").seed == 42

    with pytest.raises(FileNotFoundError):
        InputDocument.load(str(tmp_path / "missing.json"))
