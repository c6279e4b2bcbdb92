import json

import pytest

from cospectral_trees import search
from cospectral_trees.cli import run
from cospectral_trees.trees import canon_code, tree_from_json


def out_of(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_charfn_spider(capsys, data_dir):
    code, out, _ = out_of(capsys, ["charfn", "--tree", str(data_dir / "spider.json"), "--root", "0",
                                   "--root-cond", "neumann"])
    assert code == 0
    assert out.strip() == '{"s_exp":4,"poly":["0","-4","0","20"]}'


def test_charfn_root_free(capsys, data_dir, tmp_path):
    p = tmp_path / "free.json"
    p.write_text('{"n": 3, "edges": [[0, 1], [1, 2]], "root": null}')
    code, out, _ = out_of(capsys, ["charfn", "--tree", str(p), "--pendants", "neumann"])
    assert json.loads(out) == {"s_exp": -1, "poly": ["0", "-2", "0", "2"]}


def test_fixtures(capsys):
    code, out, _ = out_of(capsys, ["fixtures"])
    assert code == 0
    assert "FAIL" not in out
    assert out.strip().endswith("13/13 passed")


def test_enumerate_text(capsys):
    code, out, _ = out_of(capsys, ["enumerate", "--n", "4", "--format", "text"])
    assert code == 0
    assert len(out.strip().splitlines()) == 2


def test_enumerate_json_has_config(capsys):
    _, out, _ = out_of(capsys, ["enumerate", "--n", "5"])
    data = json.loads(out)
    assert data["config"]["n"] == 5 and len(data["trees"]) == 3


def test_attach_and_cospectral(capsys, data_dir, tmp_path):
    code, out, _ = out_of(capsys, ["attach", "--base", str(data_dir / "spider.json"), "--vertex", "0",
                                   "--attached", str(data_dir / "p2_leaf.json")])
    assert code == 0
    first = json.loads(out)
    assert first["consistent"] and first["charfn"] == {"s_exp": 5, "poly": ["0", "-4", "0", "24"]}
    out_of(capsys, ["attach", "--base", str(data_dir / "spider.json"), "--vertex", "4",
                    "--attached", str(data_dir / "p2_leaf.json")])
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text(json.dumps(first["charfn"]))
    b.write_text('{"s_exp": 5, "poly": ["0", "-5", "0", "30"]}')
    code, out, _ = out_of(capsys, ["cospectral", "--a", str(a), "--b", str(b)])
    res = json.loads(out)
    assert res["cospectral"] and not res["identical"]


def test_spectrum_csv(capsys, data_dir, tmp_path):
    p = tmp_path / "star.json"
    p.write_text('{"n": 4, "edges": [[0,1],[0,2],[0,3]], "root": 0}')
    code, out, _ = out_of(capsys, ["spectrum", "--tree", str(p), "--K", "4"])
    rows = out.strip().splitlines()
    assert rows[0] == "index,lambda,multiplicity,source"
    assert rows[2].split(",")[2:] == ["2", "s-factor"]
    assert len(rows) == 5


def test_export_dot_roundtrip(capsys, data_dir, tmp_path):
    target = tmp_path / "hub.dot"
    code, _, _ = out_of(capsys, ["export-dot", "--tree", str(data_dir / "hub12.json"), "--out", str(target)])
    assert code == 0
    assert target.read_text().startswith("graph T {")
    back = tree_from_json(target.with_suffix(".json").read_text())
    orig = tree_from_json((data_dir / "hub12.json").read_text())
    assert canon_code(back) == canon_code(orig)
    assert canon_code(back.tree) == canon_code(orig.tree)


def test_sharded_equal_m_concatenates(capsys):
    _, full, _ = out_of(capsys, ["search-equal-m", "--n", "12", "--format", "csv", "--no-header"])
    parts = []
    for i in range(3):
        code, out, _ = out_of(capsys, ["search-equal-m", "--n", "12", "--format", "csv", "--no-header",
                                       "--shard", f"{i}/3"])
        assert code == 0
        parts.append(out)
    assert "".join(parts) == full
    assert full.count("\n") == 2


def test_search_pairs_and_remark35(capsys):
    code, out, _ = out_of(capsys, ["search-pairs", "--n", "9"])
    rep = json.loads(out)
    assert code == 0 and rep["stats"]["pairs"] == 1 and rep["complete"]
    code, out, _ = out_of(capsys, ["remark35", "--n-max", "8", "--format", "csv"])
    assert code == 0 and ",4/5," in out


def test_verify_exit_code(capsys):
    code, out, _ = out_of(capsys, ["verify", "--n-max", "7"])
    assert code == 0 and json.loads(out)["stats"]["violations"] == 0


def test_malformed_input(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 3, "edges": [[0, 1]]}')
    code, _, err = out_of(capsys, ["charfn", "--tree", str(bad), "--root", "0"])
    assert code == 2
    assert json.loads(err)["field"] == "tree"
    bad.write_text('{"edges": []}')
    code, _, err = out_of(capsys, ["charfn", "--tree", str(bad)])
    assert code == 2 and "'n'" in json.loads(err)["error"]
    code, _, err = out_of(capsys, ["search-equal-m", "--n", "12", "--shard", "5/2"])
    assert code == 2 and json.loads(err)["field"] == "shard"
    code, _, err = out_of(capsys, ["charfn", "--tree", str(tmp_path / "missing.json")])
    assert code == 2


def test_interrupted_scan_is_marked_incomplete(capsys, monkeypatch):
    def boom(*args, **kwargs):
        raise KeyboardInterrupt
        yield

    monkeypatch.setattr(search, "_run_tasks", boom)
    code, out, _ = out_of(capsys, ["verify", "--n-max", "6"])
    assert code == 1
    assert json.loads(out)["complete"] is False


def test_output_file(tmp_path, capsys):
    dest = tmp_path / "r.json"
    assert run(["remark35", "--n-max", "6", "--out", str(dest)]) == 0
    assert json.loads(dest.read_text())["records"] == []
    assert capsys.readouterr().out == ""


def test_missing_subcommand():
    with pytest.raises(SystemExit):
        run([])
