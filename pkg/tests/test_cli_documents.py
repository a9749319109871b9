from __future__ import annotations

import json
import subprocess
import sys

import pytest

from crossig.cli import main
from crossig.documents import canonical_json, dump, load_document
from crossig.errors import InvalidInput
from crossig.fixtures import builtin, idempotent_biorder, trace_groupoid
from crossig.functor_ci import build_gamma


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_documents_round_trip(tmp_path):
    S = builtin("full_transformation", (2,))
    G = trace_groupoid(S)
    x = build_gamma(G).x
    for obj in (S, idempotent_biorder(S), G, x.C, x):
        doc = json.loads(canonical_json(dump(obj)))
        again = load_document(doc)
        assert canonical_json(dump(again)) == canonical_json(dump(obj))


def test_unknown_document_kind():
    with pytest.raises(InvalidInput):
        load_document({"kind": "monoid_action"})


def test_validate_fixture_passes(capsys):
    code, out = run_cli(capsys, "validate", "--fixture", "full_transformation", "2")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "pass"
    assert doc["sections"]["trace_groupoid"]["verdict"] == "pass"


def test_validate_corrupted_biorder_reports_axiom(tmp_path, capsys):
    E = idempotent_biorder(builtin("rect_band", (2, 2)))
    doc = dump(E)
    doc["product"][0][1] = 2
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc, sort_keys=True))
    code, out = run_cli(capsys, "validate", "--input", str(path))
    report = json.loads(out)
    assert code == 1 and report["verdict"] == "fail"
    assert report["sections"]["axioms"]["violations"][0]["check"].startswith("B")


def test_validate_non_associative_table_exits_two(tmp_path, capsys):
    path = tmp_path / "table.json"
    path.write_text(json.dumps({"kind": "semigroup", "table": [[1, 0], [0, 0]]}, sort_keys=True))
    code, out = run_cli(capsys, "validate", "--input", str(path))
    assert code == 2 and json.loads(out)["error"] == "NotAssociative"


def test_unknown_fixture_exits_two(capsys):
    code, out = run_cli(capsys, "validate", "--fixture", "free_band", "3")
    assert code == 2 and json.loads(out)["error"] == "UnknownFixture"


def test_roundtrip_fixture(capsys):
    code, out = run_cli(capsys, "roundtrip", "--fixture", "full_transformation", "2")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "pass"
    assert doc["sections"]["ig_side"]["verdict"] == "pass"
    assert doc["sections"]["cr_side"]["verdict"] == "pass"


def test_build_cc_on_rect_band(tmp_path, capsys):
    path = tmp_path / "g.json"
    path.write_text(canonical_json(dump(trace_groupoid(builtin("rect_band", (2, 2))))))
    code, out = run_cli(capsys, "build", "cc", "--input", str(path))
    doc = json.loads(out)
    assert code == 0
    assert len(doc["result"]["e_gamma"]) == 4
    x = load_document(doc["result"])
    assert len(x.e_gamma) == 4


def test_build_ig_then_validate(tmp_path, capsys):
    out_path = tmp_path / "ig.json"
    code, _ = run_cli(capsys, "build", "ig", "--fixture", "brandt2", "--output", str(out_path))
    assert code == 0
    doc = json.loads(out_path.read_text())
    path = tmp_path / "ig_only.json"
    path.write_text(canonical_json(doc["result"]))
    code, out = run_cli(capsys, "validate", "--input", str(path))
    assert code == 0, out


def test_text_format(capsys):
    code, out = run_cli(capsys, "validate", "--fixture", "left_zero", "2", "--format", "text")
    assert code == 0 and out.startswith("validate left_zero(2): pass")


def test_fixtures_command(capsys):
    code, out = run_cli(capsys, "fixtures")
    doc = json.loads(out)
    assert "full_transformation(3)" in doc["fixtures"]
    assert doc["fixtures"]["left_zero(2)"]["table"] == [[0, 0], [1, 1]]


def test_roundtrip_output_is_byte_identical(tmp_path):
    outputs = []
    for k in range(2):
        path = tmp_path / f"run{k}.json"
        subprocess.run([sys.executable, "-m", "crossig", "roundtrip", "--fixture", "brandt2", "--output", str(path)],
                       check=True)
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]


def test_bad_flag_value_exits_two(capsys):
    code, out = run_cli(capsys, "validate", "--fixture", "left_zero", "2", "--jobs", "0")
    assert code == 2 and json.loads(out)["error"] == "InvalidInput"


def test_all_fixtures_output_ignores_job_count(tmp_path, capsys):
    serial, parallel = tmp_path / "serial.json", tmp_path / "parallel.json"
    assert main(["roundtrip", "--all-fixtures", "--output", str(serial)]) == 0
    assert main(["roundtrip", "--all-fixtures", "--jobs", "2", "--output", str(parallel)]) == 0
    assert serial.read_bytes() == parallel.read_bytes()
    doc = json.loads(serial.read_text())
    assert len(doc["sections"]) == 7
