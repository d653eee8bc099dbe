"""CLI: argument handling, output formats, exit codes."""

import json
import math

import pytest

from mathieu_geom.cli import main, parse_complex, theorem_matrix


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParseComplex:
    @pytest.mark.parametrize("text,expected", [
        ("0.5", 0.5 + 0j),
        ("-2", -2 + 0j),
        ("0.5+0.25i", 0.5 + 0.25j),
        ("1-0.5i", 1 - 0.5j),
        ("0.3i", 0.3j),
        ("-i", -1j),
        ("1e-2+1e-3i", 0.01 + 0.001j),
        (" 0.1 + 0.2i ", 0.1 + 0.2j),
    ])
    def test_accepted(self, text, expected):
        assert parse_complex(text) == expected

    @pytest.mark.parametrize("text", ["", "abc", "1+2j+3i"])
    def test_rejected(self, text):
        with pytest.raises(ValueError):
            parse_complex(text)


class TestEval:
    def test_json_payload(self, capsys):
        code, out, _ = run(capsys, "eval", "--family", "F", "--mu", "1",
                           "--r", "1", "--z", "0.5", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["value_im"] == 0.0
        assert 0.0 < data["value_re"] < 1.0
        assert data["tail_bound"] < 1e-10

    def test_point_outside_disk_exits_2(self, capsys):
        code, out, err = run(capsys, "eval", "--family", "F", "--mu", "1",
                             "--r", "1", "--z", "1.5")
        assert code == 2
        assert "error" in err

    def test_Q_at_zero(self, capsys):
        code, out, _ = run(capsys, "eval", "--family", "Q", "--mu", "1",
                           "--r", "1", "--z", "0", "--format", "json")
        assert code == 0
        assert json.loads(out)["value_re"] == 0.0

    def test_missing_z_exits_2(self, capsys):
        code, *_ = run(capsys, "eval", "--family", "F", "--mu", "1", "--r", "1")
        assert code == 2

    def test_classical_S(self, capsys):
        code, out, _ = run(capsys, "eval", "--family", "S", "--r", "1",
                           "--format", "json")
        assert code == 0
        data = json.loads(out)
        # Alzer bounds at r = 1
        assert 1.0 / (1.0 + 1.0 / 1.2) < data["value"] < 1.0 / (1.0 + 1.0 / 6.0)

    def test_S_requires_r(self, capsys):
        code, *_ = run(capsys, "eval", "--family", "S")
        assert code == 2


class TestVerify:
    def test_criterion_pass_and_fail_exit_codes(self, capsys):
        code_ok, out, _ = run(capsys, "verify", "--criterion", "fejer-starlike",
                              "--family", "F", "--mu", "1", "--r", "0.6",
                              "--format", "json")
        assert code_ok == 0
        assert json.loads(out)["status"] == "Verified"
        code_bad, out, _ = run(capsys, "verify", "--criterion", "fejer-starlike",
                               "--family", "F", "--mu", "1", "--r", "2.5",
                               "--format", "json")
        assert code_bad == 1
        data = json.loads(out)
        assert data["status"] == "Falsified"
        assert "witness" in data

    def test_functional_starlike_exit_code(self, capsys):
        code, out, _ = run(capsys, "verify", "--functional", "starlike",
                           "--family", "F", "--mu", "1", "--r", "0.9",
                           "--radii", "16", "--angles", "64", "--format", "json")
        assert code in (0, 1)
        data = json.loads(out)
        assert data["status"] in ("Holds", "Violated")
        assert (code == 0) == (data["status"] == "Holds")

    def test_inequality(self, capsys):
        code, out, _ = run(capsys, "verify", "--inequality", "eq-frac-ineq",
                           "--samples", "2000", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["criterion"] == "inequality:eq-frac-ineq"
        assert data["min_margin"] > 0

    def test_exactly_one_mode_required(self, capsys):
        code, *_ = run(capsys, "verify", "--family", "F", "--mu", "1", "--r", "1")
        assert code == 2
        code, *_ = run(capsys, "verify", "--criterion", "ozaki",
                       "--inequality", "eq-sqrt",
                       "--family", "F", "--mu", "1", "--r", "1")
        assert code == 2


class TestThresholdsAndSweep:
    def test_thresholds_row_count(self, capsys):
        # 8 kinds x 4 default mu values, minus the mu < 2 rows of the two
        # hypothesis-restricted kinds (2 kinds x 2 excluded mu each)
        code, out, _ = run(capsys, "thresholds", "--format", "json")
        assert code == 0
        rows = json.loads(out)["thresholds"]
        assert len(rows) == 8 * 4 - 2 * 2
        by_key = {(r["kind"], r["mu"]): r["sufficient_r"] for r in rows}
        assert by_key[("F_CloseToConvex", 1.0)] == pytest.approx(1.0)
        assert ("Q_Starlike", 0.5) not in by_key

    def test_sweep_csv_determinism(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        argv = ["sweep", "--kinds", "F_CloseToConvex,F_Starlike",
                "--mu-grid", "1,2", "--seed", "0"]
        assert main(argv + ["--out", str(a)]) == 0
        assert main(argv + ["--out", str(b)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()
        lines = a.read_text().splitlines()
        assert lines[0] == "kind,mu,sufficient_r,empirical_r,gap,probe,status"
        assert len(lines) == 5

    def test_examples(self, capsys):
        code, out, _ = run(capsys, "examples", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["SHat_goodman"]["status"] == "Verified"
        assert data["DoubleFactorial_goodman"]["status"] == "Verified"


class TestTheorems:
    def test_matrix_helper_row_count(self):
        rows = theorem_matrix([0.5, 1.0, 2.0, 5.0],
                              levels=("sequence",))
        # 8 kinds x 4 mu minus 2 kinds x 2 sub-hypothesis mu
        assert len(rows) == 28
        assert all(row["pass"] for row in rows)
        r_values = {row["kind"]: row["r"] for row in rows if row["mu"] == 1.0}
        assert r_values["F_CloseToConvex"] == pytest.approx(0.99)

    def test_cli_theorems_sequence_level(self, capsys):
        code, out, _ = run(capsys, "theorems", "--mu-grid", "1,2",
                           "--level", "sequence", "--format", "json")
        assert code == 0
        rows = json.loads(out)["matrix"]
        assert all(row["sequence"] for row in rows)

    def test_human_format(self, capsys):
        code, out, _ = run(capsys, "theorems", "--mu-grid", "1",
                           "--level", "sequence")
        assert code == 0
        assert all(line.startswith("PASS") for line in out.splitlines())
