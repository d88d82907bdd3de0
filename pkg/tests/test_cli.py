"""Command-line interface: exit codes, formats and the small inspection tools."""

import io
import json

import pytest

from p4surf.cli import main
from p4surf.idealops import Ideal
from p4surf.io import parse_ideal
from p4surf.ring import PolyRing

ring = PolyRing(p=31991, nvars=5)


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestExitCodes:
    def test_composite_characteristic_is_usage_error(self, tmp_path, capsys):
        path = write(tmp_path, "i.txt", "x0\n")
        assert main(["hilbert", "--char", "4", path]) == 2
        assert "error:" in capsys.readouterr().err

    def test_bad_range_is_usage_error(self, tmp_path, capsys):
        path = write(tmp_path, "i.txt", "x3\nx4\n")
        assert main(["cohomology-table", "--range", "bogus", path]) == 2
        assert main(["cohomology-table", "--range", "3:1", path]) == 2

    def test_unparsable_ideal_file(self, tmp_path, capsys):
        path = write(tmp_path, "i.txt", "x0 + qq\n")
        assert main(["hilbert", path]) == 2

    def test_unknown_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as err:
            main(["frobnicate"])
        assert err.value.code == 2

    def test_jobs_must_be_positive(self, tmp_path):
        path = write(tmp_path, "i.txt", "x0\n")
        assert main(["hilbert", "--jobs", "0", path]) == 2


class TestBetti:
    def test_ideal_file(self, tmp_path, capsys):
        path = write(tmp_path, "i.txt", "x0\nx1\n")
        assert main(["betti", path]) == 0
        out = capsys.readouterr().out
        assert "tot:" in out

    def test_matrix_file(self, tmp_path, capsys):
        path = write(tmp_path, "m.txt", "rows 0\ncols 1,1\nx0, x1\n")
        assert main(["betti", "--format", "json", path]) == 0
        json.loads(capsys.readouterr().out)

    def test_empty_ideal_file_is_usage_error(self, tmp_path):
        path = write(tmp_path, "i.txt", "# nothing here\n")
        assert main(["betti", path]) == 2


class TestHilbert:
    def test_plane_values(self, tmp_path, capsys):
        path = write(tmp_path, "i.txt", "x3\nx4\n")
        assert main(["hilbert", "--format", "json", "--up-to", "3", path]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["projective_dim"] == 2
        assert data["degree"] == 1
        assert data["values"] == {"0": "1", "1": "3", "2": "6", "3": "10"} or \
            data["values"] == {"0": 1, "1": 3, "2": 6, "3": 10}


class TestCohomologyTable:
    def test_plane_table(self, tmp_path, capsys):
        path = write(tmp_path, "i.txt", "x3\nx4\n")
        assert main(["cohomology-table", "--range", "0:2", path]) == 0
        out = capsys.readouterr().out
        assert "h^0" in out


class TestSmoothCheck:
    def test_smooth_plane(self, tmp_path, capsys):
        path = write(tmp_path, "i.txt", "x3\nx4\n")
        assert main(["smooth-check", path]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["smooth"] is True

    def test_singular_cone(self, tmp_path, capsys):
        path = write(tmp_path, "i.txt", "x3\nx0*x1 - x2^2\n")
        assert main(["smooth-check", path]) == 1
        data = json.loads(capsys.readouterr().out)
        assert data["smooth"] is False


class TestLink:
    def test_two_planes_in_a_degenerate_ci(self, tmp_path, capsys):
        target = write(tmp_path, "i.txt", "x3\nx4\n")
        f1 = write(tmp_path, "f1.txt", "x3\n")
        f2 = write(tmp_path, "f2.txt", "x0*x4\n")
        assert main(["link", "--ci", f"{f1},{f2}", target]) == 0
        gens = parse_ideal(ring, capsys.readouterr().out)
        residual = Ideal(ring, gens)
        expect = Ideal(ring, [ring.parse("x0"), ring.parse("x3")])
        assert residual.same_ideal(expect)

    def test_requires_two_polynomials(self, tmp_path):
        target = write(tmp_path, "i.txt", "x3\nx4\n")
        f1 = write(tmp_path, "f1.txt", "x3\n")
        assert main(["link", "--ci", f1, target]) == 2
        f2 = write(tmp_path, "f2.txt", "x0\nx1\n")
        assert main(["link", "--ci", f"{f1},{f2}", target]) == 2


class TestInvariants:
    def test_surface_file(self, tmp_path, capsys):
        path = write(tmp_path, "i.txt", "x3\nx4\n")
        assert main(["invariants", path]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data == {"kind": "surface", "degree": 1, "sectional_genus": 0,
                        "chi": 1, "K2": 9}

    def test_curve_file(self, tmp_path, capsys):
        path = write(tmp_path, "i.txt", "x0\nx1\nx4\n")
        assert main(["invariants", path]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data == {"kind": "curve", "degree": 1, "arithmetic_genus": 0}

    def test_pipe_mode_reads_json_report(self, capsys, monkeypatch):
        payload = {
            "pipeline": "demo", "seed": 3, "verdict": "pass",
            "stages": [{"name": "alpha",
                        "assertions": [{"name": "count", "expected": 2,
                                        "computed": 2, "ok": True}]}],
        }
        monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(payload)))
        assert main(["invariants"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["verdict"] == "pass"
        assert data["assertions"] == {"alpha/count": 2}

    def test_pipe_mode_rejects_non_json(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("not json"))
        assert main(["invariants"]) == 2


class TestOutputDir:
    def test_append_only_run_directory(self, tmp_path, capsys):
        # use the cheap betti command? output dirs only apply to pipelines,
        # so exercise the contract through the report helpers instead
        from p4surf.errors import UsageError
        from p4surf.report import run_directory
        run_directory(tmp_path, "monad", 1, 31991)
        with pytest.raises(UsageError):
            run_directory(tmp_path, "monad", 1, 31991)
