import json
import subprocess
import sys

import numpy as np
import pytest
from fixtures import axis_quadratic, bounded_quadratic, diag5, singleton_isometry, singleton_pencil

from hrnr import io
from hrnr.cli import main
from hrnr.matpoly import MatrixPolynomial


def dump(path, doc) -> str:
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def files(tmp_path):
    return {
        "single": dump(tmp_path / "single.json", io.polynomial_doc(singleton_pencil())),
        "bounded": dump(tmp_path / "bounded.json", io.polynomial_doc(bounded_quadratic())),
        "axis": dump(tmp_path / "axis.json", io.polynomial_doc(axis_quadratic())),
        "diag": dump(tmp_path / "diag.json", io.polynomial_doc(MatrixPolynomial([diag5()]))),
        "q": dump(tmp_path / "q.json", io.isometry_doc(singleton_isometry())),
        "dir": tmp_path,
    }


class TestMember:
    def test_exit_codes(self, files, capsys):
        assert main(["member", "--input", files["bounded"], "--k", "2", "--point", "-0.75,-1.25"]) == 0
        assert main(["member", "--input", files["bounded"], "--k", "2", "--point", "50,50"]) == 1
        assert main(["member", "--input", files["single"], "--k", "2", "--point", "0,0"]) == 2
        out = capsys.readouterr().out.splitlines()
        assert out[0].startswith("IN") and out[1].startswith("OUT theta=") and out[2].startswith("BORDER")

    def test_usage_errors(self, files, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["member", "--input", str(bad), "--k", "2", "--point", "0,0"]) == 64
        assert main(["member", "--input", files["bounded"], "--k", "9", "--point", "0,0"]) == 64
        assert main(["member", "--input", files["bounded"], "--k", "2", "--point", "zero"]) == 64
        assert main(["member", "--input", files["bounded"], "--k", "2"]) == 64
        assert main(["nonsense"]) == 64

    def test_zero_leading_coefficient_rejected(self, files, tmp_path):
        doc = io.polynomial_doc(bounded_quadratic())
        doc["coefficients"][-1] = [[[0, 0]] * 4] * 4
        path = dump(tmp_path / "zero.json", doc)
        assert main(["member", "--input", path, "--k", "2", "--point", "0,0"]) == 64

    def test_hex_float_input(self, tmp_path, capsys):
        doc = {"n": 1, "m": 1, "coefficients": [[[["-0x1.8p+1", "0x0p+0"]]], [[[1, 0]]]]}
        path = dump(tmp_path / "hex.json", doc)
        assert main(["member", "--input", path, "--k", "1", "--point", "3,0"]) == 2
        assert main(["member", "--input", path, "--k", "1", "--point", "2,0"]) == 1


class TestRasters:
    def args(self, files, out, cmd="grid"):
        a = [cmd, "--input", files["bounded"], "--k", "2", "--window", "-6,2,-4,4", "--res", "12,10", "--out-csv", out]
        return a + (["--samples", "20", "--seed", "3"] if cmd == "montecarlo" else [])

    def test_grid_csv_and_manifest(self, files):
        out = str(files["dir"] / "g.csv")
        svg = str(files["dir"] / "g.svg")
        assert main(self.args(files, out) + ["--out-svg", svg]) == 0
        lines = open(out).read().splitlines()
        assert lines[0] == "x,y,status" and len(lines) == 1 + 120
        assert {ln.rsplit(",", 1)[1] for ln in lines[1:]} <= {"IN", "OUT", "BORDER"}
        man = json.load(open(out + ".manifest.json"))
        assert man["command"] == "grid" and man["options"]["res"] == "12,10" and "version" in man
        assert "<desc>" in open(svg).read()

    @pytest.mark.parametrize("cmd", ["grid", "montecarlo"])
    def test_byte_identical(self, files, cmd):
        a, b = str(files["dir"] / "a.csv"), str(files["dir"] / "b.csv")
        assert main(self.args(files, a, cmd)) == 0
        assert main(self.args(files, b, cmd)) == 0
        assert open(a, "rb").read() == open(b, "rb").read()

    def test_degenerate_window(self, files):
        out = str(files["dir"] / "g.csv")
        a = ["grid", "--input", files["bounded"], "--k", "2", "--window", "1,1,0,1", "--res", "4,4", "--out-csv", out]
        assert main(a) == 64
        a[7] = "-1,1,0,1"
        a[9] = "1,4"
        assert main(a) == 64

    def test_unwritable_output(self, files):
        out = str(files["dir"] / "missing" / "g.csv")
        assert main(self.args(files, out)) == 73


class TestOtherCommands:
    def test_matrix_range(self, files, capsys):
        out = str(files["dir"] / "p.csv")
        assert main(["matrix-range", "--input", files["diag"], "--k", "2", "--out-csv", out]) == 0
        assert capsys.readouterr().out.startswith("POLYGON vertices=")
        assert open(out).readline().strip() == "x,y"
        assert main(["matrix-range", "--input", files["diag"], "--k", "3", "--out-csv", out]) == 0
        assert capsys.readouterr().out.strip() == "EMPTY"
        assert open(out).read() == ""
        assert main(["matrix-range", "--input", files["bounded"], "--k", "2", "--out-csv", out]) == 64

    def test_sylvester(self, files, capsys):
        assert main(["sylvester", "--input", files["single"], "--k", "2", "--isometry", files["q"]]) == 0
        out = capsys.readouterr().out
        assert "rank=2 delta=0" in out and "verdict: rank not < 2m=2" in out

    def test_sylvester_rejects_non_isometry(self, files, tmp_path):
        q = dump(tmp_path / "nq.json", io.isometry_doc(2 * singleton_isometry()))
        assert main(["sylvester", "--input", files["single"], "--k", "2", "--isometry", q]) == 65

    def test_sharp_exact(self, files, capsys):
        assert main(["sharp", "--input", files["diag"], "--k", "2"]) == 0
        out = capsys.readouterr().out
        pts = [complex(*map(float, ln.split()[1].split(","))) for ln in out.splitlines() if ln.startswith("sharp ")]
        assert min(abs(z + 3) for z in pts) < 1e-9

    def test_companion(self, files, capsys):
        out = str(files["dir"] / "c.json")
        args = ["companion", "--input", files["bounded"], "--k", "2", "--points", "-0.75,-1.25;50,0", "--out-json", out]
        assert main(args) == 0
        text = capsys.readouterr().out
        assert "inclusion PASS" in text and "origin C=" in text
        C = io.load_polynomial(out)
        assert (C.n, C.m) == (8, 1)

    def test_probe(self, files, capsys):
        out = str(files["dir"] / "pr.csv")
        assert main(["probe", "--input", files["bounded"], "--k", "2", "--samples", "4", "--seed", "1", "--out-csv", out]) == 0
        assert "point " in capsys.readouterr().out
        assert len(open(out).read().splitlines()) >= 2

    def test_module_entry_point(self, files):
        proc = subprocess.run(
            [sys.executable, "-m", "hrnr", "member", "--input", files["bounded"], "--k", "2", "--point", "50,50"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 1 and proc.stdout.startswith("OUT")


class TestIO:
    def test_polynomial_round_trip(self):
        L = bounded_quadratic()
        back = io.parse_polynomial(json.loads(json.dumps(io.polynomial_doc(L))))
        assert all(np.array_equal(a, b) for a, b in zip(L.coeffs, back.coeffs))

    def test_isometry_round_trip(self):
        q = singleton_isometry()
        assert np.array_equal(io.parse_isometry(io.isometry_doc(q)), q)

    @pytest.mark.parametrize(
        "doc,field",
        [
            ({"n": 0, "m": 0, "coefficients": []}, "n"),
            ({"n": 1, "m": 1, "coefficients": [[[[1, 0]]]]}, "coefficients"),
            ({"n": 1, "m": 0, "coefficients": [[[[1]]]]}, "coefficients[0][0][0]"),
            ({"n": 1, "m": 0, "coefficients": [[[["zz", 0]]]]}, "coefficients[0][0][0][0]"),
            ({"n": 1, "m": 0, "coefficients": [[[[True, 0]]]]}, "coefficients[0][0][0][0]"),
        ],
    )
    def test_parse_errors_name_field(self, doc, field):
        with pytest.raises(io.ParseError) as e:
            io.parse_polynomial(doc)
        assert e.value.field == field
