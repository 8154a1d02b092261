import json
import re
import subprocess
import sys
from fractions import Fraction
from math import gcd

import jsonschema
import pytest

from flagfpt.cli import EXIT_DISAGREEMENT, EXIT_FAILED, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE, main
from flagfpt.selftest import load_golden

RATIONAL = {
    "type": "object",
    "properties": {"num": {"type": "integer"}, "den": {"type": "integer", "minimum": 1}},
    "required": ["num", "den"],
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema", "query", "fpt", "a_invariant", "gorenstein", "f_pure", "lct", "methods", "witnesses", "timings"],
    "properties": {
        "schema": {"const": "flagfpt.report/v1"},
        "query": {
            "type": "object",
            "required": ["type", "rank", "removed", "weight", "multiple"],
            "properties": {
                "type": {"enum": list("ABCDEFG")},
                "rank": {"type": "integer", "minimum": 1},
                "removed": {"type": "array", "items": {"type": "integer"}, "minItems": 1},
                "weight": {"enum": [None, "fundamental", "rho"]},
                "multiple": {"type": "integer", "minimum": 1},
            },
        },
        "fpt": RATIONAL,
        "lct": RATIONAL,
        "a_invariant": {"type": ["integer", "null"]},
        "gorenstein": {"type": "boolean"},
        "f_pure": {"type": "boolean"},
        "methods": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "witnesses": {"type": "object", "additionalProperties": RATIONAL},
        "timings": {"type": "object", "properties": {"total_ms": {"type": ["number", "null"]}}},
    },
}

TABLE_SCHEMA = {
    "type": "object",
    "required": ["schema", "table", "caption", "rows"],
    "properties": {
        "schema": {"const": "flagfpt.table/v1"},
        "table": {"enum": [1, 2]},
        "caption": {"type": "string"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "indices", "variety", "formula", "cells"],
                "properties": {
                    "cells": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["type", "rank", "d", "fpt", "lct", "methods"],
                            "properties": {"fpt": RATIONAL, "lct": RATIONAL, "d": {"type": "integer"}},
                        },
                    }
                },
            },
        },
    },
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def text_field(out, key):
    return re.search(rf"^{key}:\s+(\S+)", out, re.M).group(1)


# -- fpt ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv,fpt,gorenstein",
    [
        (["--type", "A", "--rank", "6", "--removed", "2,3,5"], Fraction(10), True),
        (["--type", "E", "--rank", "8", "--removed", "4"], Fraction(9), True),
        (["--type", "A", "--rank", "3", "--removed", "1,2,3", "--rho-multiple", "3"], Fraction(2, 3), False),
        (["--type", "G", "--rank", "2", "--removed", "2", "--veronese", "2"], Fraction(3, 2), False),
        (["--type", "c", "--rank", "4", "--removed", "1"], Fraction(8), True),
    ],
)
def test_fpt_text_and_json_agree(capsys, argv, fpt, gorenstein):
    code, text, _ = run(capsys, "fpt", *argv)
    assert code == EXIT_OK
    assert Fraction(text_field(text, "fpt")) == fpt
    assert text_field(text, "lct") == text_field(text, "fpt")
    assert text_field(text, "gorenstein") == str(gorenstein).lower()

    code, raw, _ = run(capsys, "fpt", *argv, "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(raw)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert Fraction(doc["fpt"]["num"], doc["fpt"]["den"]) == fpt
    assert gcd(doc["fpt"]["num"], doc["fpt"]["den"]) == 1
    assert doc["lct"] == doc["fpt"]
    assert json.dumps(doc["lct"]) == json.dumps(doc["fpt"])
    assert doc["gorenstein"] is gorenstein
    assert (doc["a_invariant"] is None) == (not gorenstein)
    assert doc["methods"] == text_field(text, "methods").split(",")[:1] + doc["methods"][1:]
    for tag, value in doc["witnesses"].items():
        assert re.search(rf"^\s+{re.escape(tag)}\s+{value['num']}(/{value['den']})?$", text, re.M)


def test_fast_flag(capsys):
    code, raw, _ = run(capsys, "fpt", "--type", "A", "--rank", "4", "--removed", "2", "--fast", "--format", "json")
    assert code == EXIT_OK and len(json.loads(raw)["methods"]) == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["fpt", "--type", "A", "--rank", "3", "--removed", "5"],
        ["fpt", "--type", "A", "--rank", "3", "--removed", "1,2", "--veronese", "2"],
        ["fpt", "--type", "A", "--rank", "3", "--removed", "2", "--rho-multiple", "2"],
        ["fpt", "--type", "E", "--rank", "6", "--removed", "1,2"],
        ["fpt", "--type", "E", "--rank", "5", "--removed", "1"],
    ],
)
def test_precondition_exit(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_PRECONDITION
    assert err.startswith("error:") and not out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["fpt", "--type", "A", "--rank", "3"],
        ["fpt", "--type", "X", "--rank", "3", "--removed", "1"],
        ["fpt", "--type", "A", "--rank", "3", "--removed", "1", "--veronese", "2", "--rho-multiple", "2"],
        ["fpt", "--type", "A", "--rank", "0", "--removed", "1"],
        ["fpt", "--type", "A", "--rank", "3", "--removed", "a,b"],
        ["table", "3"],
    ],
)
def test_usage_exit(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == EXIT_USAGE


def test_disagreement_exit(capsys, monkeypatch):
    from flagfpt import fpt_engine

    monkeypatch.setattr(fpt_engine, "_BASE_METHODS", (("chain", lambda q: 4), ("root-sum", lambda q: 5)))
    code, _, err = run(capsys, "fpt", "--type", "A", "--rank", "3", "--removed", "2")
    assert code == EXIT_DISAGREEMENT
    assert "disagreement" in err and "chain" in err


def test_exit_codes_distinct():
    assert len({EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_PRECONDITION, EXIT_DISAGREEMENT}) == 5


# -- table ---------------------------------------------------------------------------


def test_table2_text(capsys):
    code, out, _ = run(capsys, "table", "2")
    assert code == EXIT_OK
    assert "The F-pure threshold of exceptional type Grassmannians" in out
    for row in ("5,3", "12,11,9,7,9,12", "17,14,11,8,10,13,18", "23,17,13,9,11,14,19,29"):
        assert row in out


def test_table2_json_roundtrip(capsys):
    code, raw, _ = run(capsys, "table", "2", "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(raw)
    jsonschema.validate(doc, TABLE_SCHEMA)
    assert json.loads(json.dumps(doc)) == doc
    assert len(doc["rows"]) == 5
    assert sum(len(r["cells"]) for r in doc["rows"]) == 27
    e7 = next(r for r in doc["rows"] if r["label"] == "E_7")
    assert [c["fpt"]["num"] for c in e7["cells"]] == [17, 14, 11, 8, 10, 13, 18]
    for r in doc["rows"]:
        for c in r["cells"]:
            assert c["lct"] == c["fpt"]


def test_table1_rank_bound(capsys):
    code, raw, _ = run(capsys, "table", "1", "--rank-bound", "6", "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(raw)
    jsonschema.validate(doc, TABLE_SCHEMA)
    rows = {r["label"]: r for r in doc["rows"]}
    assert set(rows) == {"A_r", "B_r", "C_r", "D_r", "E_6", "E_7"}
    assert {c["rank"] for c in rows["B_r"]["cells"]} == set(range(2, 7))
    assert max(c["rank"] for r in ("A_r", "C_r", "D_r") for c in rows[r]["cells"]) == 6
    for c in rows["D_r"]["cells"]:
        assert c["fpt"]["num"] == 2 * (c["rank"] - 1)
        assert len(c["methods"]) >= 2

    code, text, _ = run(capsys, "table", "1", "--rank-bound", "6")
    assert "2(r-1)" in text and "  D6" in text and "  D7" not in text


# -- hasse ---------------------------------------------------------------------------


def dot_summary(dot):
    nodes = re.findall(r"^\s+(n\d+) \[label=\"([^\"]+)\"(.*)\];$", dot, re.M)
    edges = re.findall(r"^\s+(n\d+) -> (n\d+)( \[color=red[^\]]*\])?;$", dot, re.M)
    highlighted = [label for _, label, attrs in nodes if "fillcolor=gold" in attrs]
    return nodes, edges, highlighted


def test_hasse_idn_4_7(capsys):
    code, dot, _ = run(capsys, "hasse", "idn", "4", "7")
    assert code == EXIT_OK
    assert dot.startswith("digraph") and dot.rstrip().endswith("}")
    nodes, edges, hl = dot_summary(dot)
    assert len(nodes) == 35
    assert hl == ["(1,2,3,4)", "(1,2,3,5)", "(1,2,4,6)", "(1,3,5,7)", "(2,4,6,7)", "(3,5,6,7)", "(4,5,6,7)"]
    ids = {label: node for node, label, _ in nodes}
    red = [(a, b) for a, b, style in edges if style]
    assert red == [(ids[x], ids[y]) for x, y in zip(hl, hl[1:])]
    assert len(set((a, b) for a, b, _ in edges)) == len(edges)
    assert "rankdir=BT" in dot


def test_hasse_idn_1_3_is_path(capsys):
    _, dot, _ = run(capsys, "hasse", "idn", "1", "3")
    nodes, edges, hl = dot_summary(dot)
    assert len(nodes) == 3 and len(hl) == 3
    assert [(a, b) for a, b, _ in edges] == [("n0", "n1"), ("n1", "n2")]
    assert all("dashed" not in style for _, _, style in edges)


def test_hasse_young(capsys):
    _, dot, _ = run(capsys, "hasse", "young", "7", "2,3,5")
    nodes, _, hl = dot_summary(dot)
    assert len(nodes) == 77 and len(hl) == 10


def test_hasse_minuscule(capsys):
    code, dot, _ = run(capsys, "hasse", "minuscule", "E", "6", "1")
    nodes, _, hl = dot_summary(dot)
    assert code == EXIT_OK and len(nodes) == 27 and len(hl) == 12


def test_hasse_byte_stable():
    cmd = [sys.executable, "-m", "flagfpt", "hasse", "young", "6", "2,4"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_hasse_cap(capsys):
    code, out, err = run(capsys, "hasse", "idn", "8", "16")
    assert code == EXIT_PRECONDITION and not out and "--cap" in err
    code, out, _ = run(capsys, "hasse", "--cap", "20", "idn", "3", "6")
    assert code == EXIT_OK
    code, _, err = run(capsys, "hasse", "--cap", "10", "minuscule", "E", "6", "1")
    assert code == EXIT_PRECONDITION and "--cap" in err


def test_hasse_non_minuscule(capsys):
    code, _, err = run(capsys, "hasse", "minuscule", "F", "4", "1")
    assert code == EXIT_PRECONDITION and "error" in err


# -- selftest ------------------------------------------------------------------------


def test_selftest_reduced_covers_all_types(capsys):
    code, out, _ = run(capsys, "selftest", "--max-rank", "4")
    assert code == EXIT_OK
    for t in ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2"):
        assert re.search(rf"PASS .*\b{t}", out), t
    assert re.search(r"^(\d+)/\1 checks passed$", out, re.M)


def test_selftest_perturbed_fixture(capsys, tmp_path):
    golden = load_golden()
    golden["table2"]["E7"][3] = 9
    path = tmp_path / "golden.json"
    path.write_text(json.dumps(golden))
    code, out, _ = run(capsys, "selftest", "--max-rank", "3", "--golden", str(path))
    assert code == EXIT_FAILED
    failed = out.strip().splitlines()[-1]
    assert failed.startswith("failed:") and "E7" in failed and "d=4" in failed


def test_selftest_verbatim_flags_f4(capsys):
    code, out, _ = run(capsys, "selftest", "--max-rank", "3", "--no-errata")
    assert code == EXIT_FAILED
    failed = out.strip().splitlines()[-1]
    assert "F4" in failed
