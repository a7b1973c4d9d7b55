import functools
import json
import subprocess
import sys

import pytest

from idealgraph import cli
from idealgraph.graph import LoopGraph, VertexLabel
from idealgraph.scan import gamma0_of_modulus, scan_range


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def planted_path(n):
    if n == 25:
        vs = tuple(VertexLabel(name=f"v{i}") for i in range(4))
        return LoopGraph.from_edges(vs, [(0, 1), (1, 2), (2, 3)])
    return gamma0_of_modulus(n)


class TestGraph:
    def test_json(self, capsys):
        code, out, _ = run(capsys, "graph", "20", "--format", "json")
        data = json.loads(out)
        assert code == 0
        assert len(data["vertices"]) == 4 and len(data["edges"]) == 5
        assert data["schema_version"] == 1

    def test_field_table(self, capsys):
        code, out, _ = run(capsys, "graph", "7", "--format", "table")
        assert code == 0 and "0 vertices (field)" in out

    def test_dot(self, capsys):
        code, out, _ = run(capsys, "graph", "36", "--format", "dot")
        assert code == 0
        nodes = [line for line in out.splitlines() if line.strip().endswith('";') and "--" not in line]
        assert len(nodes) == 7
        assert out == run(capsys, "graph", "36", "--format", "dot")[1]

    def test_gamma1_table(self, capsys):
        code, out, _ = run(capsys, "graph", "20", "--gamma1")
        assert code == 0 and "(loop)" in out and "6 vertices" in out

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "g.dot"
        code, out, _ = run(capsys, "graph", "20", "--format", "dot", "-o", str(path))
        assert code == 0 and out == ""
        assert path.read_text().startswith("graph gamma0_n20 {")


class TestDegrees:
    def test_csv_z36(self, capsys):
        code, out, _ = run(capsys, "degrees", "36")
        rows = out.splitlines()
        assert code == 0
        assert rows[0] == "divisor,exponents,a_set_size,degree,degree_brute"
        assert '6,"(1,1)",2,2,2' in rows
        assert '4,"(2,0)",0,6,6' in rows

    def test_chain_ring(self, capsys):
        code, out, _ = run(capsys, "degrees", "4")
        assert code == 0
        assert out.splitlines()[1:] == ["2,(1),1,0,0"]

    def test_json(self, capsys):
        code, out, _ = run(capsys, "degrees", "20", "--format", "json")
        data = json.loads(out)
        assert code == 0 and data["schema_version"] == 1
        assert {d["divisor"]: d["degree"] for d in data["degrees"]} == {2: 2, 4: 3, 5: 3, 10: 2}

    def test_mismatch_exit(self, capsys, monkeypatch):
        real = cli.degree_formula

        def off_by_one(ring, ideal, graph=None):
            r = real(ring, ideal, graph)
            return type(r)(r.vertex, r.a_set, r.degree_formula + 1, r.degree_brute)

        monkeypatch.setattr(cli, "degree_formula", off_by_one)
        code, _, err = run(capsys, "degrees", "12")
        assert code == 3 and "degree mismatch" in err


class TestRingAndVerify:
    def test_ring_json(self, capsys):
        code, out, _ = run(capsys, "ring", "36", "--format", "json")
        data = json.loads(out)
        assert code == 0
        assert data["classification"] == {"local": False, "field": False, "reduced": False, "vnr": False}
        assert data["jacobson_radical"] == 6

    def test_ring_table(self, capsys):
        code, out, _ = run(capsys, "ring", "30")
        assert code == 0 and "vnr: yes" in out

    def test_verify_oracle(self, capsys):
        code, out, _ = run(capsys, "verify", "36", "--oracle")
        assert code == 0 and "FAIL" not in out

    def test_verify_squarefree(self, capsys):
        code, out, _ = run(capsys, "verify", "30")
        assert code == 0 and "complete graph: yes (squarefree)" in out

    def test_verify_trivial(self, capsys):
        assert run(capsys, "verify", "2")[0] == 0

    def test_verify_oracle_too_big(self, capsys):
        code, _, err = run(capsys, "verify", "2001", "--oracle")
        assert code == 1 and "2000" in err


class TestScan:
    def test_clean_range(self, capsys, tmp_path):
        path = tmp_path / "scan.jsonl"
        code, out, _ = run(capsys, "scan", "2", "1000", "-o", str(path))
        assert code == 0
        lines = path.read_text().splitlines()
        assert len(lines) == 999
        assert not any(json.loads(line)["counterexample_flag"] for line in lines)
        assert "COUNTEREXAMPLE" not in out

    def test_single_moduli(self, capsys, tmp_path):
        path = tmp_path / "one.jsonl"
        assert run(capsys, "scan", "64", "64", "-o", str(path))[0] == 0
        assert json.loads(path.read_text())["component_count"] == 5
        assert run(capsys, "scan", "20", "20", "-o", str(path))[0] == 0
        assert json.loads(path.read_text())["max_component_diameter"] == 2

    def test_jobs_identical(self, capsys, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run(capsys, "scan", "2", "3000", "-j", "1", "-o", str(a))
        run(capsys, "scan", "2", "3000", "-j", "2", "-o", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_counterexample_exit(self, capsys, monkeypatch):
        monkeypatch.setattr(cli, "scan_range", functools.partial(scan_range, builder=planted_path))
        code, out, _ = run(capsys, "scan", "2", "30")
        assert code == 2
        assert "COUNTEREXAMPLE n=25: d(v0, v3) = 3" in out

    def test_env_jobs(self, capsys, monkeypatch):
        monkeypatch.setenv("IDEALGRAPH_JOBS", "zero")
        assert run(capsys, "scan", "2", "10")[0] == 1

    def test_bad_range(self, capsys):
        assert run(capsys, "scan", "10", "2")[0] == 1


class TestLocalSquareZero:
    @pytest.mark.parametrize("q", [2, 3, 5])
    def test_shape(self, capsys, q):
        code, out, _ = run(capsys, "local-sq", str(q))
        assert code == 0 and f"shape: K_{q + 1} ∪ K_1" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "local-sq", "2", "--format", "json")
        data = json.loads(out)
        assert code == 0 and len(data["vertices"]) == 4 and len(data["edges"]) == 3

    def test_bad_q(self, capsys):
        assert run(capsys, "local-sq", "4")[0] == 1

    def test_shape_failure_exit(self, capsys, monkeypatch):
        monkeypatch.setattr(cli, "local_square_zero_shape", lambda g, q: False)
        code, _, err = run(capsys, "local-sq", "2")
        assert code == 3 and "not K_3" in err


class TestUsage:
    @pytest.mark.parametrize("argv", [[], ["graph"], ["graph", "x"], ["nope"], ["graph", "20", "--format", "svg"]])
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == 1

    def test_domain_error(self, capsys):
        code, _, err = run(capsys, "graph", "1")
        assert code == 1 and "error" in err

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "idealgraph", "graph", "20", "--format", "dot"],
            capture_output=True, text=True, check=False,
        )
        assert proc.returncode == 0 and proc.stdout.startswith("graph gamma0_n20")
