import json

import pytest

from fillgraph.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestFamily:
    def test_gamma_g(self, capsys):
        code, out, _ = run(capsys, "family", "--name", "gamma_g",
                           "--genus", "3")
        assert code == 0
        assert "g=3 b=1 s=6" in out

    def test_gamma2b(self, capsys):
        code, out, _ = run(capsys, "family", "--name", "gamma2b",
                           "--boundaries", "4")
        assert code == 0
        assert "g=2 b=4 s=2" in out

    def test_torus(self, capsys):
        code, out, _ = run(capsys, "family", "--name", "torus_pair")
        assert code == 0
        assert "g=1 b=1 s=2" in out

    def test_range_error_exit_2(self, capsys):
        code, _, err = run(capsys, "family", "--name", "gamma2b",
                           "--boundaries", "1")
        assert code == 2
        assert "b >= 2" in err

    def test_writes_file(self, capsys, tmp_path):
        out_file = tmp_path / "g.json"
        code, _, _ = run(capsys, "family", "--name", "g1",
                         "-o", str(out_file))
        assert code == 0
        doc = json.loads(out_file.read_text())
        assert doc["format"] == "fatgraph/1"


class TestAnalyze:
    @pytest.fixture()
    def g1_file(self, capsys, tmp_path):
        path = tmp_path / "g1.json"
        run(capsys, "family", "--name", "g1", "-o", str(path))
        return str(path)

    def test_text_output(self, capsys, g1_file):
        code, out, _ = run(capsys, "analyze", g1_file)
        assert code == 0
        assert "boundary lengths: [12]" in out
        assert "cycle lengths: [3, 2, 1]" in out
        assert "filling: yes" in out

    def test_json_output(self, capsys, g1_file):
        code, out, _ = run(capsys, "analyze", g1_file, "--json")
        info = json.loads(out)
        assert info["signature"]["g"] == 2
        assert info["omega_max"] == 2

    def test_expect_pass_and_fail(self, capsys, g1_file):
        code, _, _ = run(capsys, "analyze", g1_file,
                         "--expect", "g=2,b=1,s=3,filling=yes")
        assert code == 0
        code, _, err = run(capsys, "analyze", g1_file, "--expect", "g=3")
        assert code == 1
        assert "expect failed" in err

    def test_non_filling_diagnostic(self, capsys, tmp_path):
        path = tmp_path / "sphere.json"
        run(capsys, "family", "--name", "sphere_circle", "-o", str(path))
        code, out, _ = run(capsys, "analyze", str(path))
        assert code == 0
        assert "filling: no" in out and "4-regular" in out

    def test_parse_error_exit_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{}")
        code, _, _ = run(capsys, "analyze", str(bad))
        assert code == 2


class TestOp:
    @pytest.fixture()
    def graphs(self, capsys, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        run(capsys, "family", "--name", "gamma_g", "--genus", "2",
            "-o", str(a))
        run(capsys, "family", "--name", "torus_pair", "-o", str(b))
        return str(a), str(b)

    def test_join(self, capsys, graphs):
        a, b = graphs
        code, out, _ = run(capsys, "op", "join", "--left", a, "--right", b,
                           "--x", "e1", "--y", "a")
        assert code == 0
        assert "case=SAME/SAME" in out
        assert "b:1+1→2" in out
        assert "s:4+2→5" in out

    def test_plumb(self, capsys, graphs, tmp_path):
        a, b = graphs
        out_path = tmp_path / "res.json"
        code, out, _ = run(capsys, "op", "plumb", "--left", a, "--right", b,
                           "--x", "e1", "--y", "a", "-o", str(out_path))
        assert code == 0
        assert "g:2+1→3" in out
        assert out_path.exists()

    def test_consum(self, capsys, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        run(capsys, "family", "--name", "gamma0", "-o", str(a))
        run(capsys, "family", "--name", "g2", "-o", str(b))
        code, out, _ = run(capsys, "op", "consum", "--left", str(a),
                           "--right", str(b), "--w", "0", "--u", "1")
        assert code == 0
        assert "s:3+2→3" in out

    def test_bad_selector_exit_2(self, capsys, graphs):
        a, b = graphs
        code, _, _ = run(capsys, "op", "join", "--left", a, "--right", b,
                         "--x", "nope", "--y", "a")
        assert code == 2


class TestSynth:
    def test_success(self, capsys, tmp_path):
        out_file = tmp_path / "f.json"
        plan_file = tmp_path / "p.json"
        code, out, _ = run(capsys, "synth", "-g", "3", "-b", "2", "-s", "7",
                           "-o", str(out_file), "--plan-out", str(plan_file))
        assert code == 0
        assert "g=3 b=2 s=7" in out
        assert json.loads(plan_file.read_text())["format"] == "fillplan/1"

    def test_impossible_exit_3(self, capsys):
        code, _, err = run(capsys, "synth", "-g", "2", "-b", "1", "-s", "2")
        assert code == 3
        assert "impossible" in err

    def test_tight(self, capsys):
        code, out, _ = run(capsys, "synth", "-g", "4", "-s", "5", "--tight")
        assert code == 0
        assert "omega_max=4" in out

    def test_out_of_range_exit_2(self, capsys):
        code, _, _ = run(capsys, "synth", "-g", "3", "-b", "1", "-s", "99")
        assert code == 2


class TestEnumerate:
    def test_filter_empty(self, capsys):
        code, out, _ = run(capsys, "enumerate", "-V", "3",
                           "--filter", "g=2,b=1,s=2,filling=true")
        assert code == 0
        assert len(out.strip().split("\n")) == 1  # header only

    def test_one_vertex(self, capsys):
        code, out, _ = run(capsys, "enumerate", "-V", "1")
        assert code == 0
        assert len(out.strip().split("\n")) == 3

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "enumerate", "-V", "1",
                           "--format", "json")
        assert len(json.loads(out)) == 2

    def test_ceiling_exit_2(self, capsys):
        code, _, _ = run(capsys, "enumerate", "-V", "9")
        assert code == 2


class TestExport:
    def test_dot(self, capsys, tmp_path):
        path = tmp_path / "g1.json"
        run(capsys, "family", "--name", "g1", "-o", str(path))
        code, out, _ = run(capsys, "export", str(path), "--format", "dot")
        assert code == 0
        assert out.startswith("graph fatgraph {")
        assert out.count(" -- ") == 6

    def test_json(self, capsys, tmp_path):
        path = tmp_path / "t.json"
        run(capsys, "family", "--name", "torus_pair", "-o", str(path))
        code, out, _ = run(capsys, "export", str(path), "--format", "json")
        assert json.loads(out)["format"] == "fatgraph/1"


class TestVerifySmall:
    def test_ops_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "ops")
        assert code == 0
        assert "ALL PASS" in out

    def test_grid_guard(self, capsys):
        code, _, err = run(capsys, "verify", "theorem1", "--gmax", "9")
        assert code == 2
        assert "unsafe-large" in err
