from __future__ import annotations

import json
import subprocess
import sys

import pytest

from cyclen import io
from cyclen.cli import main
from cyclen.graph import build_graph
from cyclen.spaces import make_comb, make_owl


@pytest.fixture
def owl_file(tmp_path):
    p = tmp_path / "owl.json"
    io.dump_graph(make_owl().graph, str(p))
    return str(p)


def run(argv, tmp_path):
    out = tmp_path / "report.json"
    code = main(argv + ["--json", str(out)])
    report = json.loads(out.read_text()) if code == 0 else None
    return code, report


class TestMinrep:
    def test_owl(self, owl_file, tmp_path, capsys):
        code, report = run(["minrep", "--graph", owl_file, "--class", "1,1"], tmp_path)
        assert code == 0
        (r,) = report["results"]
        assert r["length"] == {"exact": "4", "approx": 4.0}
        assert len(r["decomposition"]) == 1 and r["oplus"]
        assert report["command"][0] == "minrep"
        assert report["input_digest"].startswith("sha256:")
        assert "minimal length 4" in capsys.readouterr().out

    def test_zero_class(self, owl_file, tmp_path):
        code, report = run(["minrep", "--graph", owl_file, "--class", "0,0"], tmp_path)
        assert code == 0
        assert report["results"][0]["length"]["exact"] == "0"
        assert report["results"][0]["decomposition"] == []

    def test_comb(self, tmp_path):
        p = tmp_path / "comb.json"
        io.dump_graph(make_comb(10).graph, str(p))
        coords = ",".join(str(x) for x in make_comb(10).classes["sum"].coords)
        code, report = run(["minrep", "--graph", str(p), "--class", coords], tmp_path)
        assert code == 0 and report["results"][0]["length"]["exact"] == "1023/1024"

    def test_class_spec_forms(self, owl_file, tmp_path):
        s = make_owl()
        walk = io.walk_to_json(s.walks["tau"])
        specs = ["[1,0]", '{"chords": [0, 1]}', json.dumps({"walk": walk})]
        code, report = run(["minrep", "--graph", owl_file] + [a for x in specs for a in ("--class", x)], tmp_path)
        assert code == 0
        assert [r["class"] for r in report["results"]] == [[1, 0], [0, 1], [0, 1]]

    def test_replay_witness(self, owl_file, tmp_path):
        code, report = run(["minrep", "--graph", owl_file, "--class", "2,-1"], tmp_path)
        circ = report["witness"]["circulations"][0]
        code2, again = run(["minrep", "--graph", owl_file, "--class", json.dumps({"circulation": circ})], tmp_path)
        assert code2 == 0 and again["results"][0]["class"] == [2, -1]
        assert again["results"][0]["length"] == report["results"][0]["length"]

    def test_jobs_match_serial(self, owl_file, tmp_path):
        argv = ["minrep", "--graph", owl_file, "--class", "1,1", "--class", "2,-3", "--class", "0,1"]
        _, serial = run(argv, tmp_path)
        _, parallel = run(argv + ["--jobs", "2"], tmp_path)
        assert serial["results"] == parallel["results"]

    def test_mismatch(self, owl_file, tmp_path):
        assert main(["minrep", "--graph", owl_file, "--class", "1,1,1"]) == 3

    def test_malformed_class(self, owl_file):
        assert main(["minrep", "--graph", owl_file, "--class", "a,b"]) == 2
        assert main(["minrep", "--graph", owl_file, "--class", "{bad"]) == 2

    def test_unconserved_circulation(self, owl_file):
        spec = json.dumps({"circulation": [{"edge": 0, "flow": 1}]})
        assert main(["minrep", "--graph", owl_file, "--class", spec]) == 4

    def test_open_walk(self, owl_file):
        spec = json.dumps({"walk": {"start": 0, "steps": [[1, 1]]}})
        assert main(["minrep", "--graph", owl_file, "--class", spec]) == 4

    def test_missing_graph(self, tmp_path):
        assert main(["minrep", "--graph", str(tmp_path / "nope.json")]) == 2

    def test_dot(self, owl_file, tmp_path):
        dot = tmp_path / "g.dot"
        assert main(["minrep", "--graph", owl_file, "--class", "1,1", "--dot", str(dot)]) == 0
        assert "penwidth" in dot.read_text()


class TestDecompose:
    def test_outer_cycle(self, owl_file, tmp_path):
        code, report = run(["decompose-z2", "--graph", owl_file, "--edges", "0,1,3,4"], tmp_path)
        assert code == 0
        r = report["results"]
        assert len(r["circuits"]) == 1 and r["partition"] and r["length_conserved"]

    def test_two_triangles(self, tmp_path):
        p = tmp_path / "t.json"
        g = build_graph(6, [(0, 1, 1), (1, 2, 1), (2, 0, 1), (3, 4, 1), (4, 5, 1), (5, 3, 1)])
        io.dump_graph(g, str(p))
        code, report = run(["decompose-z2", "--graph", str(p), "--edges", "[0,1,2,3,4,5]"], tmp_path)
        assert code == 0 and len(report["results"]["circuits"]) == 2

    def test_single_edge(self, owl_file, capsys):
        assert main(["decompose-z2", "--graph", owl_file, "--edges", "0"]) == 4
        assert "vertex 0" in capsys.readouterr().err

    def test_malformed(self, owl_file):
        assert main(["decompose-z2", "--graph", owl_file, "--edges", "0,9"]) == 2


class TestVerify:
    @pytest.fixture
    def k4_file(self, tmp_path):
        p = tmp_path / "k4.json"
        g = build_graph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 2, 1), (1, 3, 1), (0, 3, 1)])
        io.dump_graph(g, str(p))
        return str(p)

    def _basis(self, tmp_path, rows):
        p = tmp_path / "basis.json"
        p.write_text(json.dumps(rows))
        return str(p)

    def test_faces(self, k4_file, tmp_path, capsys):
        basis = self._basis(tmp_path, [[0, 4, 5], [1, 2, 4], [2, 3, 5]])
        code, report = run(["verify-2basis", "--graph", k4_file, "--basis", basis], tmp_path)
        assert code == 0 and report["results"]["verdict"] is True
        assert capsys.readouterr().out.strip() == "true"

    def test_under_spanning(self, owl_file, tmp_path, capsys):
        basis = self._basis(tmp_path, [[0, 1, 2]])
        assert main(["verify-2basis", "--graph", owl_file, "--basis", basis]) == 0
        assert capsys.readouterr().out.strip() == "false: does not span (rank 1 < 2)"

    def test_over_used_edge(self, k4_file, tmp_path, capsys):
        basis = self._basis(tmp_path, [[0, 1, 3], [1, 2, 4], [0, 1, 2, 5]])
        assert main(["verify-2basis", "--graph", k4_file, "--basis", basis]) == 0
        assert capsys.readouterr().out.strip() == "false: edge 1 in 3 members"

    def test_replay_decomposition_report(self, tmp_path):
        # the circuits of a decomposition, fed back as a family, verify
        p = tmp_path / "t.json"
        g = build_graph(6, [(0, 1, 1), (1, 2, 1), (2, 0, 1), (3, 4, 1), (4, 5, 1), (5, 3, 1)])
        io.dump_graph(g, str(p))
        _, report = run(["decompose-z2", "--graph", str(p), "--edges", "0,1,2,3,4,5"], tmp_path)
        saved = tmp_path / "decomp.json"
        saved.write_text(json.dumps(report))
        code, verdict = run(["verify-2basis", "--graph", str(p), "--basis", str(saved)], tmp_path)
        assert code == 0 and verdict["results"]["verdict"] is True

    def test_malformed(self, owl_file, tmp_path):
        assert main(["verify-2basis", "--graph", owl_file, "--basis", self._basis(tmp_path, {"x": 1})]) == 2
        assert main(["verify-2basis", "--graph", owl_file, "--basis", self._basis(tmp_path, [[0, 0]])]) == 2


class TestDemo:
    def test_owl(self, tmp_path):
        code, report = run(["demo", "owl"], tmp_path)
        r = report["results"]
        assert code == 0 and r["oplus_sigma_tau"] is False and r["oplus_primitive"] is True
        assert r["length_sigma_plus_tau"]["exact"] == "4" and r["naive_sum"]["exact"] == "6"

    def test_comb(self, tmp_path):
        code, report = run(["demo", "comb", "--n", "10"], tmp_path)
        last = report["results"]["rows"][-1]
        assert last["sigma_rep_length"]["exact"] == "1023/1024"
        assert last["connected_walk_length"]["approx"] >= 20

    def test_circle(self, tmp_path, capsys):
        code, report = run(["demo", "circle"], tmp_path)
        assert report["results"]["lower_bound_unit_circle"]["exact"] == "1"
        assert "lower bound 1" in capsys.readouterr().out

    def test_ladder(self, tmp_path):
        code, report = run(["demo", "ladder", "--n", "6"], tmp_path)
        assert report["results"]["all_zero"] is True

    def test_sine_comb(self, tmp_path):
        code, report = run(["demo", "sine-comb", "--n", "6"], tmp_path)
        assert report["results"]["cauchy"] is True
        assert report["results"]["rows"][0]["d1_upper"]["exact"] == "1/8·π"

    def test_unknown(self):
        assert main(["demo", "torus"]) == 2

    def test_bad_n(self):
        assert main(["demo", "comb", "--n", "0"]) == 2


def test_space_export(tmp_path):
    out = tmp_path / "ladder.json"
    assert main(["space", "ladder", "--n", "3", "--graph-out", str(out)]) == 0
    assert io.load_graph(str(out)).m == 10


def test_module_entry_point(owl_file):
    proc = subprocess.run(
        [sys.executable, "-m", "cyclen", "minrep", "--graph", owl_file, "--class", "1,1", "--json", "-"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    report = json.loads(proc.stdout[proc.stdout.index("{"):])
    assert report["results"][0]["length"]["exact"] == "4"


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        main(["minrep", "--jobs", "x"])
    assert info.value.code == 2
