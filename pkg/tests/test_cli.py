import json

from periform.cli import main
from periform.formats import dumps, loads
from periform.linalg import PQF
from periform.periodic import PeriodicForm


def loads_fr(s):
    from fractions import Fraction

    return Fraction(s)


def write_form(tmp_path, rows, tcols=(), name="form.json"):
    x = PeriodicForm.make(PQF.from_rows(rows), tcols)
    path = tmp_path / name
    path.write_text(dumps(x))
    return str(path)


class TestMin:
    def test_text_output(self, tmp_path, capsys):
        path = write_form(tmp_path, [[1]], [[loads_fr("1/2")]])
        assert main(["min", path]) == 0
        out = capsys.readouterr().out
        assert "lambda = 1/4, 2 classes" in out

    def test_json_output(self, tmp_path, capsys):
        path = write_form(tmp_path, [[1]], [[loads_fr("1/2")]])
        assert main(["--json", "min", path]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["lambda"] == "1/4"
        assert doc["classes"] == 2

    def test_degenerate_flagged_not_fatal(self, tmp_path, capsys):
        path = write_form(tmp_path, [[1, 0], [0, 1]], [[0, 0]])
        assert main(["min", path]) == 0
        assert "lambda = 0" in capsys.readouterr().out

    def test_parse_error_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        assert main(["min", str(bad)]) == 2


class TestDensity:
    def test_z3(self, tmp_path, capsys):
        path = write_form(tmp_path, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert main(["density", path]) == 0
        assert "0.1250000000" in capsys.readouterr().out

    def test_hexagonal_ten_digits(self, tmp_path, capsys):
        path = write_form(tmp_path, [[2, 1], [1, 2]])
        assert main(["density", path]) == 0
        assert "0.2886751346" in capsys.readouterr().out

    def test_degenerate_exit_3(self, tmp_path):
        path = write_form(tmp_path, [[1, 0], [0, 1]], [[0, 0]])
        assert main(["density", path]) == 3


class TestCertify:
    def test_line_isolated(self, tmp_path, capsys):
        path = write_form(tmp_path, [[1]], [[loads_fr("1/2")]])
        assert main(["certify", path]) == 0
        assert "IsolatedExtreme" in capsys.readouterr().out

    def test_strict_exit_not_extreme(self, tmp_path, capsys):
        path = write_form(tmp_path, [[1, 0], [0, 2]])
        assert main(["--strict-exit", "certify", path]) == 1
        assert "NotExtreme" in capsys.readouterr().out

    def test_strict_exit_inconclusive(self, tmp_path, capsys):
        path = write_form(tmp_path, [[1, 0], [0, 1]])
        assert main(["--strict-exit", "certify", path]) == 4

    def test_json_has_witness(self, tmp_path, capsys):
        path = write_form(tmp_path, [[2, 1], [1, 2]])
        assert main(["--json", "certify", path]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["verdict"] == "IsolatedExtreme"
        assert doc["eutaxy"]["tag"] == "interior"
        assert all(float_ok(w) for w in doc["eutaxy"]["witness"])

    def test_degenerate_exit_3(self, tmp_path):
        path = write_form(tmp_path, [[1, 0], [0, 1]], [[0, 0]])
        assert main(["certify", path]) == 3


def float_ok(s):
    from fractions import Fraction

    return Fraction(s) > 0


class TestImproveCommand:
    def test_improve_diag(self, tmp_path, capsys):
        path = write_form(tmp_path, [[1, 0], [0, 2]])
        assert main(["--json", "improve", path, "--steps", "500"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["final_verdict"] == "IsolatedExtreme"
        assert abs(float(doc["trajectory"][-1]["delta_over_ball"]) - 0.2886751346) < 1e-3
        values = [
            float(step["delta_over_ball"]) for step in doc["trajectory"]
        ]
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_improve_extreme_takes_no_steps(self, tmp_path, capsys):
        path = write_form(tmp_path, [[2, 1], [1, 2]])
        assert main(["improve", path]) == 0
        assert "steps taken: 0" in capsys.readouterr().out


class TestCatalog:
    def test_list(self, capsys):
        assert main(["catalog", "list"]) == 0
        out = capsys.readouterr().out
        assert "E8" in out and "Leech" in out

    def test_get_a2(self, capsys):
        assert main(["catalog", "get", "A", "2"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["Q"] == [["2", "1"], ["1", "2"]]

    def test_get_writes_file(self, tmp_path):
        out = tmp_path / "e8.json"
        assert main(["catalog", "get", "E8", "-o", str(out)]) == 0
        x = loads(out.read_text())
        assert x.d == 8

    def test_unknown_name_exit_2(self, capsys):
        assert main(["catalog", "get", "Nope"]) == 2


class TestCatalogPipelines:
    def test_e8_min_line(self, tmp_path, capsys):
        out = tmp_path / "e8.json"
        assert main(["catalog", "get", "E8", "-o", str(out)]) == 0
        assert main(["min", str(out)]) == 0
        assert "lambda = 2, 120 classes" in capsys.readouterr().out

    def test_k12_density_line(self, tmp_path, capsys):
        out = tmp_path / "k12.json"
        assert main(["catalog", "get", "K12", "-o", str(out)]) == 0
        assert main(["density", str(out)]) == 0
        assert "0.0370370370" in capsys.readouterr().out


class TestRepresent:
    def test_doubling_line(self, tmp_path, capsys):
        path = write_form(tmp_path, [[1]])
        assert main(["represent", path, "--H", "2"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["d"] == 1 and doc["m"] == 2
        assert doc["Q"] == [["4"]]
        assert doc["t"] == [["1/2"]]

    def test_roundtrip_into_min(self, tmp_path, capsys):
        path = write_form(tmp_path, [[1]])
        out = tmp_path / "rep.json"
        assert main(["represent", path, "--H", "2", "-o", str(out)]) == 0
        assert main(["min", str(out)]) == 0
        assert "lambda = 1" in capsys.readouterr().out

    def test_singular_h_exit_2(self, tmp_path):
        path = write_form(tmp_path, [[1, 0], [0, 1]])
        assert main(["represent", path, "--H", "1 1; 1 1"]) == 2

    def test_2d_sublattice(self, tmp_path, capsys):
        path = write_form(tmp_path, [[1, 0], [0, 1]])
        assert main(["represent", path, "--H", "1 0; 0 2"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["m"] == 2
