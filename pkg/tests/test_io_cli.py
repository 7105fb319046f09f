from __future__ import annotations

import json
from pathlib import Path

import pytest

from fss.cli import EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, EXIT_PIPELINE, main
from fss.errors import CycleSyntaxError, ParseError
from fss.fixtures import cycles_to_perms, fixture
from fss.io import loads_document, parse_document, read_document
from fss.linalg import Matrix

DATA = Path(__file__).parent / "data"


def test_document_round_trip():
    doc = fixture("d8-plane")
    again = loads_document(doc.dumps())
    assert again.names == doc.names
    assert again.faithful == doc.faithful and again.module == doc.module
    assert again.digest() == doc.digest()


@pytest.mark.parametrize(
    "obj",
    [
        [],
        {"field": "rational"},
        {"field": "real", "generators": []},
        {"field": "rational", "generators": []},
        {"field": "rational", "generators": [{"name": "a", "module": [["1.5"]], "faithful": [["1"]]}]},
        {"field": "rational", "generators": [{"name": "a", "module": [[1]], "faithful": [["1"]]}]},
        {"field": "rational", "generators": [{"name": "a", "module": [["1", "0"]], "faithful": [["1"]]}]},
        {"field": {"prime": 5}, "generators": [{"name": "a", "module": [["5"]], "faithful": [["1"]]}]},
        {"field": "rational", "generators": [{"name": "a", "module": [["1"]]}]},
        {"field": "rational", "generators": [{"name": "a", "module": [["1"]], "faithful": [["1"]]}], "extra": 1},
    ],
)
def test_schema_errors(obj):
    with pytest.raises(ParseError):
        parse_document(obj)


def test_hecke_asset_parses_and_satisfies_relations():
    doc = read_document(DATA / "hecke_v224.json", require_faithful=False)
    assert not doc.has_faithful
    assert doc.names == ["s1", "s2", "x1", "x2", "x3"]
    m = dict(zip(doc.names, doc.module))
    F = doc.field
    one = Matrix.identity(F, 6)
    assert m["s1"] @ m["s1"] == one and m["s2"] @ m["s2"] == one
    assert m["s1"] @ m["s2"] @ m["s1"] == m["s2"] @ m["s1"] @ m["s2"]
    for a, b in [("x1", "x2"), ("x1", "x3"), ("x2", "x3")]:
        assert m[a] @ m[b] == m[b] @ m[a]
    assert m["s1"] @ m["x3"] == m["x3"] @ m["s1"] and m["s2"] @ m["x1"] == m["x1"] @ m["s2"]
    assert m["s1"] @ m["x1"] == m["x2"] @ m["s1"] - one
    assert m["s2"] @ m["x2"] == m["x3"] @ m["s2"] - one
    x1 = m["x1"]
    assert ((x1 - one.scale(2)) @ (x1 - one.scale(2)) @ (x1 - one.scale(4))).is_zero()
    with pytest.raises(ParseError):
        read_document(DATA / "hecke_v224.json")


def test_cycle_syntax_variants():
    d8 = cycles_to_perms(["(1,2,3,4)(1,3)"])
    assert d8 == [(1, 2, 3, 0), (2, 1, 0, 3)]
    assert cycles_to_perms(["(1 2 3 4)", "(1 3)"]) == d8
    assert cycles_to_perms(["(1,2,3,4); (1,3)"]) == d8
    assert cycles_to_perms(["(1,2)(3,4); (1,3)"]) == [(1, 0, 3, 2), (2, 1, 0, 3)]
    assert cycles_to_perms(["()"]) == [(0,)]
    for bad in ["(1,2", "1,2", "(a,b)", "(1,1)", "(0,1)", ""]:
        with pytest.raises(CycleSyntaxError):
            cycles_to_perms([bad])


@pytest.fixture
def d8_input(tmp_path):
    path = tmp_path / "d8.json"
    assert main(["fixture", "d8-plane", "-o", str(path)]) == EXIT_OK
    return path


def test_decompose_and_verify_round_trip(tmp_path, d8_input, capsys):
    report = tmp_path / "r.json"
    figure = tmp_path / "chain.png"
    assert main(["decompose", str(d8_input), "--report", str(report), "--figure", str(figure)]) == EXIT_OK
    data = json.loads(report.read_text())
    assert data["bound"] == 8 and data["oracle_dim"] == 8 and data["checks"]["all_passed"]
    assert all(all(lv["verification"].values()) for lv in data["levels"])
    assert figure.stat().st_size > 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("level\tdim_A")
    assert main(["verify", str(report), str(d8_input)]) == EXIT_OK


def test_reports_are_byte_stable(tmp_path, d8_input):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["decompose", str(d8_input), "--report", str(a), "--seed", "3"])
    main(["decompose", str(d8_input), "--report", str(b), "--seed", "3"])
    assert a.read_bytes() == b.read_bytes()


def test_tampered_report(tmp_path, d8_input):
    report = tmp_path / "r.json"
    main(["decompose", str(d8_input), "--report", str(report)])
    data = json.loads(report.read_text())
    data["bound"] = 9
    report.write_text(json.dumps(data))
    assert main(["verify", str(report), str(d8_input)]) == EXIT_MISMATCH


def test_exit_codes(tmp_path, d8_input):
    corrupt = tmp_path / "bad.json"
    corrupt.write_text("{not json")
    assert main(["decompose", str(corrupt)]) == EXIT_INPUT
    assert main(["decompose", str(d8_input), "--max-levels", "0"]) == EXIT_PIPELINE
    assert main(["verify", str(tmp_path / "missing.json"), str(d8_input)]) == EXIT_INPUT
    assert main(["from-perm-group", "(1,2", "-o", str(tmp_path / "x.json")]) == EXIT_INPUT


def test_from_perm_group(tmp_path):
    out = tmp_path / "g.json"
    assert main(["from-perm-group", "(1,2,3,4)(1,3)", "-o", str(out)]) == EXIT_OK
    doc = read_document(out)
    assert doc.faithful == fixture("d8").faithful
    assert main(["from-perm-group", "()", "-o", str(out)]) == EXIT_OK
    assert main(["decompose", str(out), "--verify", "fast", "--timings", "--report", str(tmp_path / "r.json")]) == EXIT_OK
    data = json.loads((tmp_path / "r.json").read_text())
    assert data["bound"] == 1 and "timings" in data
    assert main(["from-perm-group", "(1,2,3)", "--prime", "7", "-o", str(out)]) == EXIT_OK
    assert read_document(out).field.p == 7
