"""
Tests for the command-line interface: output tables, files written, and
exit codes.
"""

import json

import pytest

from toromaps.cli import main
from toromaps.maps.tmap import read_tmap, write_tmap
from toromaps.unicellular import classify


@pytest.fixture(name="theta_file")
def theta_file_fixture(theta, tmp_path):
    return str(write_tmap(tmp_path / "theta.tmap", theta))


class TestTables:
    def test_series(self, capsys):
        assert main(["series", "--family", "Te", "--order", "5"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "degree\tcoefficient"
        assert lines[-1] == "5\t40"

    def test_bivariate_series(self, capsys):
        assert main(["series", "--family", "T", "--order", "3"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("z_black")
        assert len(lines) == 5

    def test_enum(self, capsys):
        assert main(["enum", "--edges", "2", "--class", "T"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines == ["edges\tclass\tfaces\tvertices\tcount", "2\tT\t1\t1\t1"]

    def test_enum_modes(self, capsys):
        """Two edges: five unrooted classes, one of them on the torus."""
        assert main(["enum", "--edges", "2", "--unrooted"]) == 0
        rows = capsys.readouterr().out.splitlines()[1:]
        assert sum(int(r.split("\t")[-1]) for r in rows) == 5
        assert main(["enum", "--edges", "2", "--genus", "1"]) == 0
        assert capsys.readouterr().out.splitlines()[1:] == ["2\tall\t1\t1\t1"]
        assert main(["enum", "--edges", "2", "--genus", "-1"]) == 2

    def test_enum_grouped(self, capsys):
        assert main(["enum", "--edges", "3", "--class", "T", "--group-by", "vf"]) == 0
        assert capsys.readouterr().out.startswith("faces")

    def test_enum_emit(self, tmp_path):
        assert main(["enum", "--edges", "3", "--class", "T", "--emit", str(tmp_path / "maps")]) == 0
        assert len(list((tmp_path / "maps").glob("*.tmap"))) == 2

    def test_enum_above_cap(self, capsys):
        assert main(["enum", "--edges", "99"]) == 2
        assert "CapExceeded" in capsys.readouterr().err


class TestMapCommands:
    def test_check_ok(self, theta_file, capsys):
        assert main(["check", "--class", "H", "--in", theta_file]) == 0
        assert capsys.readouterr().out.strip() == "H\tok"

    def test_check_fails(self, theta_file, capsys):
        assert main(["check", "--class", "T3", "--in", theta_file]) == 1
        assert "NotInT3" in capsys.readouterr().err

    def test_psi(self, caterpillar3, tmp_path, capsys):
        source = write_tmap(tmp_path / "u.tmap", caterpillar3.carrier)
        target = tmp_path / "h.tmap"
        assert main(["psi", "--in", str(source), "--out", str(target), "--trace"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "leaf_dart\ttarget_dart"
        assert len(out) == 4
        doc = read_tmap(target)
        assert doc.out is not None
        assert doc.map.n_faces == 4

    def test_psi_unbalanced(self, unbalanced3, tmp_path):
        source = write_tmap(tmp_path / "u.tmap", unbalanced3.carrier)
        assert main(["psi", "--in", str(source), "--out", str(tmp_path / "h.tmap")]) == 1

    def test_phi(self, theta_file, tmp_path):
        target = tmp_path / "u.tmap"
        assert main(["phi", "--in", theta_file, "--out", str(target)]) == 0
        assert classify(read_tmap(target).map).n_leaves == 0

    def test_decompose(self, theta_dummy, tmp_path):
        source = write_tmap(tmp_path / "q.tmap", theta_dummy.q)
        out_dir = tmp_path / "parts"
        assert main(["decompose", "--in", str(source), "--edge", "3", "--out-dir", str(out_dir)]) == 0
        assert read_tmap(out_dir / "h_prime.tmap").map.n_darts == 6
        assert read_tmap(out_dir / "d_prime.tmap").map.n_darts == 18
        manifest = json.loads((out_dir / "manifest.json").read_text())
        assert manifest["marked_edge"] == 3

    def test_decompose_bad_edge(self, theta_dummy, tmp_path):
        source = write_tmap(tmp_path / "q.tmap", theta_dummy.q)
        assert main(["decompose", "--in", str(source), "--edge", "99", "--out-dir", str(tmp_path)]) == 1

    def test_sample(self, capsys):
        assert main(["sample", "--leaves", "3", "--seed", "1"]) == 0
        assert capsys.readouterr().out.startswith("tmap 1\n")

    def test_export(self, theta_file, capsys):
        assert main(["export", "--in", theta_file, "--format", "json"]) == 0
        assert json.loads(capsys.readouterr().out)["genus"] == 1

    def test_verify(self, capsys):
        assert main(["verify", "--leaves", "0", "--edges", "2"]) == 0
        assert "failures" in capsys.readouterr().out


class TestErrors:
    def test_missing_file(self, tmp_path):
        assert main(["check", "--class", "T", "--in", str(tmp_path / "missing.tmap")]) == 2

    def test_bad_format(self, tmp_path):
        path = tmp_path / "bad.tmap"
        path.write_text("not a map\n")
        assert main(["export", "--in", str(path)]) == 1

    def test_unknown_class(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["check", "--class", "Z", "--in", "x.tmap"])
        assert excinfo.value.code == 2
