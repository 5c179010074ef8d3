import json
import subprocess
import sys

import pytest

from wallacs import catalog
from wallacs.cli import main
from wallacs.document import DocumentError, dumps, encode_int, parse

UNKNOWN_DOC = {"name": "diag", "n": 6, "betti": 2, "intersection_form": [[1, 0], [0, -1]], "chi": None}


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def write(tmp_path):
    def _write(content, name="doc.json"):
        p = tmp_path / name
        p.write_text(content if isinstance(content, str) else json.dumps(content))
        return p
    return _write


def test_validate_exit_codes(capsys, write):
    assert run(capsys, "validate", write(dumps(catalog.get("hp2"))))[0] == 0
    code, out, _ = run(capsys, "validate", write({"n": 4, "betti": 1, "intersection_form": [[2]], "chi": [1]}))
    assert code == 1 and "not unimodular" in out
    code, _, err = run(capsys, "validate", write('{"n": 4, "betti": 1, "intersection_fo'))
    assert code == 2 and "line 1" in err
    assert run(capsys, "validate", write("{}", "x.json").parent / "missing.json")[0] == 2


def test_validate_json(capsys, write):
    code, out, _ = run(capsys, "validate", "--format", "json", write({"n": 4, "betti": 1, "intersection_form": [[2]], "chi": [1]}))
    assert code == 1
    assert "not-unimodular" in [v["code"] for v in json.loads(out)["violations"]]


def test_positioned_field_errors():
    with pytest.raises(DocumentError, match=r"\$\.chi\[1\]"):
        parse('{"n": 4, "betti": 2, "intersection_form": [[0, 1], [1, 0]], "chi": [1, true]}')
    with pytest.raises(DocumentError, match=r"\$\.intersection_form\[1\]"):
        parse('{"n": 4, "betti": 2, "intersection_form": [[0, 1], [1]]}')
    with pytest.raises(DocumentError, match="unknown field"):
        parse('{"n": 4, "betti": 0, "intersection_form": [], "extra": 1}')
    with pytest.raises(DocumentError, match="missing"):
        parse('{"n": 4, "intersection_form": []}')


def test_decide_text_and_json(capsys, write):
    code, out, _ = run(capsys, "decide", write(dumps(catalog.get("hp2"))))
    assert code == 0
    assert "stable-fails" in out and "9" in out
    code, out, _ = run(capsys, "decide", "--format", "json", write(dumps(catalog.get("s6xs6"))))
    report = json.loads(out)
    assert report["acs"]["admits"] == "Yes" and report["acs"]["witness"] == [1, 1]
    assert report["acs"]["target"] == 2
    code, out, _ = run(capsys, "decide", "--format", "json", write(dumps(catalog.get("sphere6"))))
    assert json.loads(out)["acs"]["admits"] == "Yes"


def test_decide_invalid_has_no_verdicts(capsys, write):
    code, out, _ = run(capsys, "decide", "--format", "json", write({"n": 4, "betti": 1, "intersection_form": [[2]], "chi": [1]}))
    report = json.loads(out)
    assert code == 1
    assert not report["validation"]["valid"]
    assert not {"derived", "stable", "acs"} & set(report)


def test_decide_is_deterministic(capsys, write):
    p = write(dumps(catalog.get("synthetic_n4_yes")))
    outs = {run(capsys, "decide", "--format", "json", "--ktheory", p)[1] for _ in range(3)}
    assert len(outs) == 1
    assert json.loads(outs.pop())["ktheory"]["KO"][0] == ["gamma", "Z"]


def test_strict_and_bound(capsys, write, monkeypatch):
    p = write(UNKNOWN_DOC)
    code, out, _ = run(capsys, "decide", "--bound", 3, "--format", "json", p)
    assert code == 0
    assert json.loads(out)["acs"]["search"]["bound_used"] == 3
    assert run(capsys, "decide", "--strict", "--bound", 3, p)[0] == 1
    monkeypatch.setenv("WALLACS_BOUND", "5")
    out = run(capsys, "decide", "--format", "json", p)[1]
    assert json.loads(out)["acs"]["search"]["bound_used"] == 5
    assert run(capsys, "decide", "--bound", 0, p)[0] == 2


def test_catalog_commands(capsys):
    code, out, _ = run(capsys, "catalog", "--list")
    names = out.split()
    assert code == 0 and names == catalog.catalog_names() and len(names) == 22
    code, out, _ = run(capsys, "catalog", "--emit", "sphere8")
    doc = json.loads(out)
    assert doc["n"] == 4 and doc["betti"] == 0 and doc["intersection_form"] == []
    assert json.loads(run(capsys, "catalog", "--emit", "hp2")[1])["chi"] == [1]
    assert run(capsys, "catalog", "--emit", "nope")[0] == 2
    lines = run(capsys, "catalog", "--dump")[1].splitlines()
    assert [json.loads(line)["name"] for line in lines] == names


@pytest.mark.parametrize("name", catalog.catalog_names())
def test_round_trip_byte_identical(name):
    text = dumps(catalog.get(name))
    assert dumps(parse(text)) == text
    assert parse(text) == catalog.get(name)


def test_big_integers_as_strings():
    assert encode_int(2**63 - 1) == 2**63 - 1
    assert encode_int(2**63) == str(2**63)
    assert encode_int(-(2**63) - 1) == str(-(2**63) - 1)
    big = 10**30
    w = parse(json.dumps({"n": 4, "betti": 2, "intersection_form": [[0, 1], [1, 0]], "chi": [str(big), 0]}))
    assert w.chi == (big, 0)
    assert json.loads(dumps(w))["chi"] == [str(big), 0]


def test_ktheory_command(capsys):
    code, out, _ = run(capsys, "ktheory", "--n", 9, "--k", 2)
    assert code == 0
    assert "Z<xi>" in out and "Z2<gamma> + Z2<zeta1> + Z2<zeta2>" in out and "r(xi) = gamma" in out
    out = run(capsys, "ktheory", "--spheres", 10)[1]
    assert "Z<omegaC>" in out and "Z2<omegaR>" in out and "r(omegaC) = omegaR" in out
    out = run(capsys, "ktheory", "--n", 7, "--k", 5, "--format", "json")[1]
    row = json.loads(out)
    assert row["KO"] == [] and row["reduction"] == {}
    assert run(capsys, "ktheory")[0] == 2
    assert run(capsys, "ktheory", "--n", 2)[0] == 2


def test_batch_catalog_dump(capsys, tmp_path):
    dump = tmp_path / "all.jsonl"
    dump.write_text(run(capsys, "catalog", "--dump")[1])
    code, out, _ = run(capsys, "batch", dump)
    reports = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(reports) == 22
    assert [r["input"]["name"] for r in reports] == catalog.catalog_names()
    code, out2, _ = run(capsys, "batch", dump, "--jobs", 3)
    assert out2 == out


def test_batch_directory(capsys, tmp_path):
    for name in ("hp2", "sphere6", "s3xs3"):
        (tmp_path / f"{name}.json").write_text(dumps(catalog.get(name)))
    code, out, _ = run(capsys, "batch", tmp_path)
    assert code == 0
    assert [json.loads(line)["source"] for line in out.splitlines()] == ["hp2.json", "s3xs3.json", "sphere6.json"]


def test_batch_empty_and_malformed(capsys, tmp_path):
    empty = tmp_path / "empty.jsonl"
    empty.write_text("")
    assert run(capsys, "batch", empty)[:2] == (0, "")
    mixed = tmp_path / "mixed.jsonl"
    good = json.dumps(json.loads(dumps(catalog.get("hp2"))))
    mixed.write_text(f"{good}\n{{broken\n{good}\n")
    code, out, _ = run(capsys, "batch", mixed)
    records = [json.loads(line) for line in out.splitlines()]
    assert code == 1 and len(records) == 3
    assert "error" in records[1] and records[1]["index"] == 1 and records[1]["source"] == "line 2"
    assert records[0]["acs"]["reason"] == "stable-fails"
    assert run(capsys, "batch", tmp_path / "absent.jsonl")[0] == 2


def test_module_entry_point_reads_stdin():
    doc = json.dumps(json.loads(dumps(catalog.get("s5xs5"))))
    proc = subprocess.run([sys.executable, "-m", "wallacs", "batch", "-"], input=doc + "\n",
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["acs"]["admits"] == "Yes"
