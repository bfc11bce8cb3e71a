import json

import pytest

from mburnside import catalog
from mburnside.action import validate
from mburnside.cli import main
from mburnside.jsonio import monoid_from_json, monoid_to_json, mset_from_json, mset_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_marks_01(capsys):
    code, out, _ = run(capsys, "marks", "--catalog", "mono_01")
    assert code == 0
    doc = json.loads(out)
    assert doc["matrix"] == [[1, 1], [0, 1]]
    assert doc["certificate"]["determinant"] == 1


def test_structure_t2(capsys):
    code, out, _ = run(capsys, "structure", "--catalog", "full_transformation 2")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "not distinguishable"
    bad = [j for j in doc["j_classes"] if not j["distinguishable"]]
    assert len(bad) == 1 and sorted(bad[0]["j_class"]) == ["11", "22"]
    assert doc["rank_burnside"] == 4 and doc["rank_group_product"] == 3


def test_analyze_appendix(capsys):
    code, out, _ = run(capsys, "analyze", "--catalog", "appendix_counterexample")
    doc = json.loads(out)
    e = "[1,0,0;1,0,0;1,0,0]"
    assert next(s for s in doc["maximal_subgroups"] if s["e"] == e)["order"] == 2
    assert doc["size"] == 13 and doc["stable"]


def test_burnside_and_orbits(capsys):
    code, out, _ = run(capsys, "burnside", "--catalog", "full_transformation:2")
    doc = json.loads(out)
    assert doc["rank"] == 4 and len(doc["multiplication"]) == 4
    code, out, _ = run(capsys, "orbits", "--catalog", "full_transformation:2")
    doc = json.loads(out)
    assert doc["points"] == 4 and len(doc["strong_orbits"]) == 2


def test_orbits_on_mset_file(tmp_path, capsys):
    path = tmp_path / "x.json"
    path.write_text(json.dumps(mset_to_json(catalog.chain_mset(3), "mono_01")))
    code, out, _ = run(capsys, "orbits", "--input", str(path))
    doc = json.loads(out)
    assert code == 0 and len(doc["strong_orbits"]) == 4 and doc["weak_orbits"] == [[0, 1, 2, 3]]


def test_byte_stable(capsys):
    a = run(capsys, "marks", "--catalog", "appendix_counterexample", "--seed", "5")[1]
    b = run(capsys, "marks", "--catalog", "appendix_counterexample", "--seed", "5")[1]
    assert a == b


def test_text_has_same_numbers(capsys):
    _, js, _ = run(capsys, "marks", "--catalog", "full_transformation:2")
    _, tx, _ = run(capsys, "marks", "--catalog", "full_transformation:2", "--format", "text")
    doc = json.loads(js)
    rows = [list(map(int, line.split())) for line in tx.splitlines() if line.startswith("  ") and line.strip()[0].isdigit()]
    assert rows == doc["matrix"]
    assert f"determinant: {doc['certificate']['determinant']}" in tx


def test_out_file(tmp_path, capsys):
    out = tmp_path / "o.json"
    assert main(["marks", "--catalog", "mono_01", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["matrix"] == [[1, 1], [0, 1]]


def test_exit_codes(tmp_path, capsys):
    assert run(capsys, "marks", "--catalog", "nope")[0] == 2
    assert run(capsys, "burnside", "--catalog", "matrix_monoid:2,3")[0] == 3
    assert run(capsys, "analyze", "--catalog", "full_transformation:3", "--element-cap", "5")[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"cayley": [[1, 1], [0, 0]]}))
    code, _, err = run(capsys, "analyze", "--input", str(bad))
    assert code == 2 and json.loads(err)["error"] == "NonAssociative"
    bad.write_text("{not json")
    assert run(capsys, "analyze", "--input", str(bad))[0] == 2
    assert run(capsys, "analyze")[0] == 2


def test_internal_assertion_exit_code(monkeypatch, capsys):
    from mburnside import cli
    from mburnside.errors import TriangularityViolation

    def boom(cfg):
        raise TriangularityViolation("forced")

    monkeypatch.setitem(cli.COMMANDS, "marks", boom)
    assert run(capsys, "marks", "--catalog", "mono_01")[0] == 4


def test_catalog_commands(capsys):
    doc = json.loads(run(capsys, "catalog", "list")[1])
    assert "appendix_counterexample" in doc["entries"]
    doc = json.loads(run(capsys, "catalog", "emit", "full_transformation", "2")[1])
    assert monoid_from_json(doc).size == 4
    doc = json.loads(run(capsys, "catalog", "emit", "chain_mset", "2")[1])
    X = mset_from_json(doc, resolve=lambda r: catalog.get(r).monoid)
    assert X.size == 3


def test_json_round_trips():
    M = catalog.full_transformation(3)
    N = monoid_from_json(json.loads(json.dumps(monoid_to_json(M))))
    assert N.cayley == M.cayley and N.identity == M.identity
    doc = {"type": "transformations", "degree": 2, "generators": [[2, 1], [1, 1]]}
    assert monoid_from_json(doc).size == 4
    doc = {"type": "matrices", "field": 2, "dim": 2, "generators": [[[1, 1], [0, 1]], [[1, 0], [0, 0]]]}
    assert monoid_from_json(doc).size > 1
    gens = catalog.appendix_generators()
    assert monoid_from_json({"type": "matrices", "field": "Z", "dim": 3, "generators": gens}).size == 13
    X = catalog.chain_mset(2)
    Y = mset_from_json(mset_to_json(X))
    assert Y.table == X.table and validate(Y)


def test_console_script_entry():
    from importlib.metadata import entry_points

    eps = [ep for ep in entry_points(group="console_scripts") if ep.name == "mburnside"]
    assert eps and eps[0].value == "mburnside.cli:main"
