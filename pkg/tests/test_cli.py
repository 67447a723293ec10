import json
import subprocess
import sys

import jsonschema
import pytest

from melnikov.cli import load_schema, main

GENERIC = {"n": 2, "v": [[2, 2], [-4, 0], [4, 3]]}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, schema, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    data = json.loads(out)
    jsonschema.validate(data, load_schema(schema))
    return code, data


@pytest.fixture
def sites_file(tmp_path):
    p = tmp_path / "sites.json"
    p.write_text(json.dumps(GENERIC))
    return p


class TestEdges:
    def test_counts(self, capsys):
        code, out, _ = run(capsys, "edges", "--q", "1", "--m", "2")
        assert code == 0
        assert out.splitlines()[0] == "q=1 m=2: 2 black, 1 red"

    def test_json(self, capsys):
        code, data = run_json(capsys, "edges", "edges", "--q", "2", "--m", "3")
        assert code == 0
        assert data["counts"] == {"black": 18, "red": 15, "total": 33}

    def test_m1_is_usage_error(self, capsys):
        code, _, err = run(capsys, "edges", "--q", "1", "--m", "1")
        assert code == 64 and "error" in err

    def test_missing_q(self, capsys):
        code, _, _ = run(capsys, "edges", "--m", "2")
        assert code == 64

    def test_bad_flag_exits_64(self):
        with pytest.raises(SystemExit) as exc:
            main(["edges", "--bogus"])
        assert exc.value.code == 64


class TestCharpoly:
    def test_one_edge(self, capsys):
        code, out, _ = run(capsys, "charpoly", "--one-edge", "+1,-1", "--q", "1")
        assert code == 0
        assert out == "t^2 - (x2 - x1)*t - 4*x1*x2\n"

    def test_single_vertex_file(self, capsys, tmp_path):
        f = tmp_path / "g.json"
        f.write_text(json.dumps({"m": 2, "q": 1, "vertices": [{"a": [0, 0], "sigma": 1}]}))
        code, out, _ = run(capsys, "charpoly", str(f))
        assert code == 0 and out == "t\n"

    def test_json_schema(self, capsys):
        code, data = run_json(capsys, "charpoly", "charpoly", "--one-edge=-1,-1", "--q", "1")
        assert code == 0
        assert data["chi"] == "t^2 - (7*x2 + 7*x1)*t + 4*x1*x2"

    def test_invalid_edge(self, capsys):
        code, _, _ = run(capsys, "charpoly", "--one-edge", "+3,-3", "--q", "1")
        assert code == 64
        code, _, _ = run(capsys, "charpoly", "--one-edge", "1,x", "--q", "1")
        assert code == 64

    def test_malformed_file(self, capsys, tmp_path):
        f = tmp_path / "g.json"
        f.write_text('{"m": 2, "vertices": [{"a": [0]}]}')
        assert run(capsys, "charpoly", str(f), "--q", "1")[0] == 64
        f.write_text("not json")
        assert run(capsys, "charpoly", str(f), "--q", "1")[0] == 64

    def test_disconnected_file(self, capsys, tmp_path):
        f = tmp_path / "g.json"
        f.write_text(json.dumps({"m": 2, "vertices": [{"a": [0, 0], "sigma": 1}, {"a": [3, 0], "sigma": 1}]}))
        assert run(capsys, "charpoly", str(f), "--q", "1")[0] == 64

    def test_byte_identical_across_processes(self, tmp_path):
        f = tmp_path / "g.json"
        f.write_text(json.dumps({"m": 3, "q": 2, "vertices": [
            {"a": [0, 0, 0], "sigma": 1}, {"a": [1, -1, 0], "sigma": 1}, {"a": [0, -1, -1], "sigma": -1}]}))
        cmd = [sys.executable, "-m", "melnikov", "charpoly", str(f), "--format", "json"]
        outs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
        assert outs[0] == outs[1] and outs[0]


class TestMatrixAndDeletion:
    def test_matrix_json(self, capsys):
        code, data = run_json(capsys, "matrix", "matrix", "--one-edge", "1,-1", "--q", "1")
        assert code == 0 and data["normalized"] is True
        assert data["entries"] == [["0", "2*x1^(1/2)*x2^(1/2)"], ["2*x1^(1/2)*x2^(1/2)", "x2 - x1"]]

    def test_raw_scaling(self, capsys):
        _, data = run_json(capsys, "matrix", "matrix", "--one-edge", "1,-1", "--q", "1", "--raw")
        assert "2*x2 - 2*x1" in data["entries"][0] + data["entries"][1]

    def test_deletion(self, capsys):
        code, data = run_json(capsys, "deletion", "deletion", "--one-edge", "1,-1,0", "--q", "1")
        assert code == 0 and data["ok"]
        assert [r["variable"] for r in data["reports"]] == [1, 2, 3]


class TestCertify:
    def test_q1(self, capsys, tmp_path):
        out = tmp_path / "r.json"
        code, _, _ = run(capsys, "certify", "--q", "1", "--m", "2", "--max-dim", "1", "--out", str(out))
        assert code == 0
        rep = json.loads(out.read_text())
        jsonschema.validate(rep, load_schema("report"))
        assert rep["summary"]["irreducible"] == rep["summary"]["graphs"] == 3
        assert not rep["incomplete"]

    def test_planted_reducible(self, capsys):
        code, out, _ = run(capsys, "certify", "--q", "1", "--m", "2", "--max-dim", "1",
                           "--planted-reducible", "--format", "json")
        assert code == 2
        rep = json.loads(out)
        planted = [g for g in rep["graphs"] if g["verdict"] == "Reducible"]
        assert len(planted) == 1 and planted[0]["factors"] == ["t - x1", "t + x1"]

    def test_cap_is_distinct_exit(self, capsys):
        code, out, _ = run(capsys, "certify", "--q", "2", "--m", "3", "--max-dim", "2",
                           "--max-graphs", "3", "--no-pairs", "--format", "json")
        assert code == 3 and json.loads(out)["incomplete"]

    def test_config_and_env_jobs(self, capsys, tmp_path, monkeypatch):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"q": 1, "m": 2, "max_dim": 1}))
        monkeypatch.setenv("MELNIKOV_JOBS", "2")
        code, out, _ = run(capsys, "--config", str(cfg), "certify", "--format", "json")
        assert code == 0
        rep = json.loads(out)
        assert rep["summary"]["graphs"] == 3 and rep["params"]["max_dimension"] == 1

    def test_bad_env_jobs(self, capsys, monkeypatch):
        monkeypatch.setenv("MELNIKOV_JOBS", "many")
        assert run(capsys, "certify", "--q", "1", "--m", "2")[0] == 64


class TestGeometry:
    def test_components(self, capsys, sites_file):
        code, data = run_json(capsys, "components", "geometry", str(sites_file), "--q", "1", "--R", "8",
                              "--components")
        assert code == 0
        assert data["counts"].get("larger", 0) == 0 and data["counts"]["single-edge"] > 0

    def test_check_generic(self, capsys, sites_file, tmp_path):
        code, data = run_json(capsys, "genericity", "geometry", str(sites_file), "--q", "1", "--R", "8",
                              "--check-generic")
        assert code == 0 and data["pass"]
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"n": 2, "v": [[0, 0], [1, 1], [2, 2]]}))
        code, data = run_json(capsys, "genericity", "geometry", str(bad), "--q", "1", "--R", "8",
                              "--check-generic")
        assert code == 2 and not data["pass"]

    def test_lift_matches_one_edge(self, capsys, sites_file):
        code, data = run_json(capsys, "lift", "geometry", str(sites_file), "--q", "1", "--R", "8", "--lift")
        assert code == 0
        assert all(g["verdict"] == "Irreducible" for g in data["graphs"])
        assert all(p["separated"] for p in data["pairs"])
        one_edge = [g for g in data["graphs"] if g["dimension"] == 1]
        assert one_edge
        for g in one_edge:
            other = next(v for v in g["canonical"]["vertices"] if any(v["a"]))
            spec = ",".join(str(x) for x in other["a"])
            _, out, _ = run(capsys, "charpoly", f"--one-edge={spec}", "--q", "1")
            assert out.strip() == g["chi"]

    def test_dot_and_graph_json(self, capsys, sites_file, tmp_path):
        dot, gj = tmp_path / "g.dot", tmp_path / "g.json"
        run(capsys, "geometry", str(sites_file), "--q", "1", "--R", "8", "--dot", str(dot), "--graph-json", str(gj))
        assert dot.read_text().startswith("graph")
        jsonschema.validate(json.loads(gj.read_text()), load_schema("geograph"))

    def test_R_too_small(self, capsys, sites_file):
        assert run(capsys, "geometry", str(sites_file), "--q", "1", "--R", "2")[0] == 64

    def test_sites_from_config(self, capsys, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"q": 1, "R": 8, "sites": GENERIC}))
        code, out, _ = run(capsys, "--config", str(cfg), "geometry", "--check-generic")
        assert code == 0 and out.startswith("pass")

    def test_malformed_sites(self, capsys, tmp_path):
        f = tmp_path / "s.json"
        f.write_text(json.dumps({"n": 2, "v": [[0, 0], [0, 0]]}))
        assert run(capsys, "geometry", str(f), "--q", "1", "--R", "4")[0] == 64


def test_search_sites(capsys):
    code, out, _ = run(capsys, "search-sites", "--n", "2", "--m", "3", "--q", "1", "--R", "8")
    assert code == 0
    jsonschema.validate(json.loads(out), load_schema("sites"))
