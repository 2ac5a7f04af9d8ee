"""Tests for the CLI front end and scan serialization."""

import json

import numpy as np
import pytest

from rotorchain import cli
from rotorchain.results import ScanResult, format_cell


class TestScanResult:
    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            ScanResult(columns=("a",), rows=[(np.nan,)])
        with pytest.raises(ValueError):
            ScanResult(columns=("a",), rows=[(np.inf,)])

    def test_rejects_ragged_rows(self):
        with pytest.raises(ValueError):
            ScanResult(columns=("a", "b"), rows=[(1.0,)])

    def test_format_cell(self):
        assert format_cell(0.1) == "0.10000000000000001"
        assert format_cell(3) == "3"
        assert format_cell("plus") == "plus"

    def test_csv_roundtrip(self, tmp_path):
        result = ScanResult(columns=("x", "y"), rows=[(1.0, "a"), (2.5, "b")], metadata={"k": 1})
        path = tmp_path / "out.csv"
        result.write(path, "csv")
        text = path.read_text()
        assert text.startswith("# k = 1\nx,y\n")
        assert "2.5,b" in text

    def test_json_output(self, tmp_path):
        result = ScanResult(columns=("x",), rows=[(1.0,)], metadata={"k": 1})
        path = tmp_path / "out.json"
        result.write(path, "json")
        payload = json.loads(path.read_text())
        assert payload["columns"] == ["x"]
        assert payload["rows"] == [[1.0]]


def run_cli(argv):
    return cli.main(argv)


class TestParseConfig:
    def test_flags_only(self, tmp_path):
        out = tmp_path / "s.csv"
        code = run_cli([
            "spectrum", "--n", "4", "--v", "0.1",
            "--ez-min", "0", "--ez-max", "1", "--ez-steps", "2",
            "--out", str(out),
        ])
        assert code == 0
        assert out.exists()

    def test_unknown_config_key_named(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"n": 4, "exz": 1.0}))
        code = run_cli(["spectrum", "--config", str(cfg)])
        assert code == 1
        assert "exz" in capsys.readouterr().err

    def test_flags_override_file(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"n": 4, "v": 0.2, "ez_min": 0.0, "ez_max": 1.0, "ez_steps": 2}))
        out = tmp_path / "s.csv"
        code = run_cli(["spectrum", "--config", str(cfg), "--v", "0.3", "--out", str(out)])
        assert code == 0
        assert "# v_dip = 0.3" in out.read_text()

    def test_physical_units_config(self, tmp_path):
        cfg = tmp_path / "krb.json"
        cfg.write_text(json.dumps({
            "n": 4, "dipole_debye": 1.2, "b_ghz": 10.0, "r_nm": 5.0,
            "field_v_per_m": 0.0, "ez_min": 0.0, "ez_max": 1.0, "ez_steps": 2,
        }))
        out = tmp_path / "s.csv"
        code = run_cli(["spectrum", "--config", str(cfg), "--out", str(out)])
        assert code == 0
        text = out.read_text()
        assert "# physical_dipole_debye = 1.2" in text
        assert "# physical_converted_v_dip = 0.17" in text

    def test_missing_config_file(self, capsys):
        code = run_cli(["spectrum", "--config", "/nonexistent.json"])
        assert code == 1


class TestRun:
    def test_spectrum_row_count(self, tmp_path):
        out = tmp_path / "s.csv"
        run_cli(["spectrum", "--n", "50", "--v", "0.1",
                 "--ez-min", "0", "--ez-max", "0", "--ez-steps", "1", "--out", str(out)])
        data_lines = [l for l in out.read_text().splitlines() if l and not l.startswith("#")]
        assert len(data_lines) - 1 == 1 + 2 * 50  # header plus 1+2N rows

    def test_twomol_table(self, tmp_path, capsys):
        out = tmp_path / "t.csv"
        code = run_cli(["twomol", "--v", "0.1", "--out", str(out)])
        assert code == 0
        text = capsys.readouterr().out
        assert "m0_lower" in text
        values = out.read_text()
        assert "0.77155" in values

    def test_pairwise_row_count_and_columns(self, tmp_path):
        out = tmp_path / "p.csv"
        run_cli(["pairwise", "--n", "6", "--v", "0.1",
                 "--ez-min", "0", "--ez-max", "1", "--ez-steps", "3",
                 "--d", "1,2", "--p", "1,3", "--out", str(out)])
        lines = [l for l in out.read_text().splitlines() if l and not l.startswith("#")]
        assert lines[0] == "e_z,observable,index,subspace,value,per_pair_mean"
        assert len(lines) - 1 == 3 * (2 + 2)

    def test_determinism_byte_identical(self, tmp_path):
        out_a = tmp_path / "a.csv"
        out_b = tmp_path / "b.csv"
        argv = ["pairwise", "--n", "6", "--v", "0.1",
                "--ez-min", "0", "--ez-max", "2", "--ez-steps", "3", "--d", "1", "--p", "3"]
        run_cli(argv + ["--out", str(out_a)])
        run_cli(argv + ["--out", str(out_b)])
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_thermal_json(self, tmp_path):
        out = tmp_path / "t.json"
        code = run_cli(["thermal", "--n", "3", "--v", "0.1",
                        "--t-min", "0.5", "--t-max", "0.5", "--t-steps", "1",
                        "--ez-min", "0", "--ez-max", "0", "--ez-steps", "1",
                        "--observable", "jzvar", "--format", "json", "--out", str(out)])
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["columns"] == ["t_rescaled", "e_z", "observable", "value"]
        assert len(payload["rows"]) == 1

    def test_crossing_experiment(self, tmp_path, capsys):
        out = tmp_path / "c.csv"
        code = run_cli(["crossing", "--n", "10", "--v", "0.1",
                        "--ez-min", "0.001", "--ez-max", "30", "--out", str(out)])
        assert code == 0
        assert "e_z*" in capsys.readouterr().out

    def test_crossing_out_of_range_exit_2(self, tmp_path, capsys):
        code = run_cli(["crossing", "--n", "10", "--v", "0.1",
                        "--ez-min", "20", "--ez-max", "30", "--out", str(tmp_path / "c.csv")])
        assert code == 2
        assert "no crossing" in capsys.readouterr().err

    def test_validate_report(self, tmp_path, capsys):
        out = tmp_path / "v.json"
        code = run_cli(["validate", "--n", "3", "--v", "0.05", "--ez", "0.5", "--out", str(out)])
        assert code == 0
        payload = json.loads(out.read_text())
        assert "report" in payload
        assert payload["report"]["max_eigenvalue_dev"] < 0.75 * 0.05**2

    def test_resource_guard_exit_2(self, tmp_path, capsys):
        code = run_cli(["validate", "--n", "6", "--v", "0.05", "--out", str(tmp_path / "v.json")])
        assert code == 2

    def test_bad_model_exit_1(self, tmp_path, capsys):
        code = run_cli(["spectrum", "--n", "1", "--out", str(tmp_path / "s.csv")])
        assert code == 1

    def test_metadata_echoes_parameters(self, tmp_path):
        out = tmp_path / "s.csv"
        run_cli(["spectrum", "--n", "4", "--v", "0.1",
                 "--ez-min", "0", "--ez-max", "1", "--ez-steps", "2", "--out", str(out)])
        text = out.read_text()
        for key in ("n_molecules", "v_dip", "ez_min", "ez_max", "ez_steps", "workers"):
            assert f"# {key} = " in text
