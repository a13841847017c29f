import json
import os
import re
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from quasitri.catalog import TorusCatalogId, base_torus, seven_vertex_torus, solid_torus
from quasitri.cli import main, parse_range
from quasitri.simplicial import from_facet_text, from_json, to_facet_text, union

HEADER = re.compile(r"^# quasitri \S+ command=(\w+) seed=(-?\d+) input=sha256:[0-9a-f]{16}$")


def _schema(name):
    return json.loads(resources.files("quasitri").joinpath("data", "schema", name).read_text())


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_header_and_subprocess_entry():
    env = dict(os.environ, QUASITRI_SEED="17")
    p = subprocess.run([sys.executable, "-m", "quasitri.cli", "charfun", "lens", "-1,0", "1,3"],
                       capture_output=True, text=True, env=env)
    assert p.returncode == 0
    m = HEADER.match(p.stderr.splitlines()[0])
    assert m and m.group(1) == "charfun" and m.group(2) == "17"
    assert p.stdout.strip() == "p=3 q=2 L(3,2)"


def test_seed_flag_overrides_environment(capsys, monkeypatch):
    monkeypatch.setenv("QUASITRI_SEED", "5")
    _, _, err = run(capsys, "--seed", "9", "charfun", "lens", "1,0", "0,1")
    assert "seed=9" in err
    _, _, err = run(capsys, "charfun", "lens", "1,0", "0,1", "--seed", "3")
    assert "seed=3" in err
    _, _, err = run(capsys, "charfun", "lens", "1,0", "0,1")
    assert "seed=5" in err


def test_unknown_flag_and_command_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["census", "--no-such-flag"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_parse_range():
    assert parse_range("-3..3") == (-3, 3)
    with pytest.raises(Exception):
        parse_range("3..-3")


def test_census_section_5(capsys):
    rc, out, _ = run(capsys, "census", "--filter", "5.*")
    assert rc == 0
    rows = [line.split() for line in out.splitlines()[1:]]
    assert [r[0] for r in rows] == ["5.1", "5.2", "5.3", "5.4", "5.5"]
    assert [int(r[3]) for r in rows] == [14, 20, 24, 30, 17]
    assert all(r[-1] == "ok" for r in rows)


def test_census_notes_and_failures(capsys):
    rc, out, _ = run(capsys, "census", "--filter", "6.8")
    assert rc == 0 and "vertex minimal" in out
    rc, out, _ = run(capsys, "census", "--filter", "6.10", "--budget", "20000")
    assert rc == 1 and "FAIL sectors" in out and "sector C1OC4" in out


def test_census_unknown_key(capsys):
    rc, _, err = run(capsys, "census", "--filter", "9.9")
    assert rc == 2
    assert "error:" in err and "5.1" in err and "7.24" in err


def test_census_json(capsys):
    rc, out, _ = run(capsys, "census", "--filter", "5.1", "--json")
    doc = json.loads(out)
    assert rc == 0 and doc[0]["key"] == "5.1" and doc[0]["ok"]
    jsonschema.validate(doc[0]["report"], _schema("verify_report.schema.json"))


def test_assemble_then_verify(capsys, tmp_path):
    path = tmp_path / "x.facets"
    rc, _, err = run(capsys, "assemble", "--census", "6.8", "--out", str(path))
    assert rc == 0 and "f_vector=(18," in err
    rc, out, _ = run(capsys, "verify", str(path), "--dim", "4", "--report", "json", "--seed", "0")
    assert rc == 0
    doc = json.loads(out)
    jsonschema.validate(doc, _schema("verify_report.schema.json"))
    assert doc["euler"] == 5 and doc["homology"]["betti"] == [1, 0, 3, 0, 1]
    assert len(doc["links"]) == 18


def test_verify_is_deterministic(capsys, tmp_path):
    path = tmp_path / "x.facets"
    run(capsys, "assemble", "--census", "5.1", "--out", str(path))
    outs = [run(capsys, "verify", "--in", str(path), "--report", "json")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_verify_text_report_and_failure(capsys, tmp_path):
    path = tmp_path / "t.facets"
    path.write_text("0 1 2 3\n")
    rc, out, err = run(capsys, "verify", str(path))
    assert rc == 1 and "closed: False" in out and "verification failed" in err


def test_homology_command(capsys, tmp_path):
    path = tmp_path / "lens.json"
    rc, out, _ = run(capsys, "assemble", "--tori", "T1", "T2", "T3", "--format", "json", "--out", str(path))
    assert rc == 0
    jsonschema.validate(json.loads(path.read_text()), _schema("complex.schema.json"))
    rc, out, _ = run(capsys, "homology", str(path), "--json")
    assert json.loads(out) == {"betti": [1, 0, 1, 0, 1], "torsion": [[], [], [], [], []]}


def test_recognize_certificate(capsys, tmp_path):
    src, cert = tmp_path / "s.facets", tmp_path / "cert.json"
    src.write_text(to_facet_text(union(base_torus(1), base_torus(2))))
    rc, out, _ = run(capsys, "recognize", "--in", str(src), "--dim", "3", "--certificate", str(cert), "--json")
    assert rc == 0 and json.loads(out)["verdict"] == "certified-sphere"
    assert json.loads(cert.read_text())["verdict"] == "certified-sphere"


def test_recognize_needs_one_input(capsys):
    with pytest.raises(SystemExit):
        main(["recognize"])


def test_catalog_export_round_trip(capsys):
    for tid in ("T1", "T2,3", "T4,0", "T7,2", "T9,1"):
        rc, out, _ = run(capsys, "catalog", tid)
        assert rc == 0 and from_facet_text(out) == solid_torus(tid).complex
        rc, out, _ = run(capsys, "catalog", tid, "--format", "json")
        jsonschema.validate(json.loads(out), _schema("complex.schema.json"))
        assert from_json(out) == solid_torus(tid).complex


def test_catalog_check_and_glue(capsys):
    rc, out, _ = run(capsys, "catalog", "--all", "--max-index", "1", "--json")
    rows = json.loads(out)
    assert rc == 0 and len(rows) == 3 + 18 and all(r["ok"] for r in rows)
    rc, out, _ = run(capsys, "catalog", "--glue", "T3,0", "T4,0")
    assert rc == 0 and out.strip().endswith("RP3")


def test_torus_export_has_fourteen_lines(capsys):
    assert len(to_facet_text(seven_vertex_torus()).splitlines()) == 14
    rc, out, _ = run(capsys, "catalog", "T1")
    assert len(out.splitlines()) == 7


def test_charfun_enumerate(capsys):
    rc, out, _ = run(capsys, "charfun", "enumerate", "--polygon", "hexagon", "--bounds", "-3..3",
                     "--complete-only", "--json")
    sols = json.loads(out)
    assert rc == 0 and len(sols) == 48 and all(s["complete"] for s in sols)
    rc, out, _ = run(capsys, "charfun", "enumerate", "--polygon", "rectangle", "--bounds=-4..4")
    assert len(out.splitlines()) == 21


def test_charfun_bullets(capsys):
    rc, out, _ = run(capsys, "charfun", "bullets", "--json")
    statuses = {(c["k"], c["l"]): c["status"] for c in json.loads(out)}
    assert statuses[(2, 0)] == "discrepancy" and statuses[(3, 1)] == "reproduced"


def test_error_exit_for_bad_ids(capsys):
    rc, _, err = run(capsys, "catalog", "T12,0")
    assert rc == 2 and "unknown torus family" in err
    assert TorusCatalogId.parse("T1") == TorusCatalogId(1)
