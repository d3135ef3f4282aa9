"""Command-line interface: runs, validation, dumps, exit codes."""

import csv
import json

import pytest

from pubeco.cli import main

SUITE = """\
t: 100000
resolution: 48
defaults:
  delta: 0.21
  sigma: 1.0
scenarios:
  - name: baseline
    alpha: 0.05
    k: 100
    m: 1
  - name: strict_threshold
    alpha: 0.001
    k: 500
    m: 3
"""


@pytest.fixture
def suite_file(tmp_path):
    path = tmp_path / "suite.yaml"
    path.write_text(SUITE)
    return path


class TestRun:
    def test_two_scenarios(self, suite_file, tmp_path, capsys):
        out = tmp_path / "out"
        assert main(["run", "--config", str(suite_file), "--out", str(out)]) == 0
        with open(out / "metrics.csv", newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert [r["name"] for r in rows] == ["baseline", "strict_threshold"]
        assert float(rows[0]["rel"]) == pytest.approx(0.76, abs=0.03)
        assert rows[1]["alpha"] == "0.001"
        mirrored = json.loads((out / "metrics.json").read_text())
        assert mirrored[0]["name"] == "baseline"
        assert mirrored[0]["pr"] == pytest.approx(float(rows[0]["pr"]))

    def test_empty_suite_header_only(self, tmp_path):
        cfg = tmp_path / "empty.yaml"
        cfg.write_text("scenarios: []\n")
        out = tmp_path / "out"
        assert main(["run", "--config", str(cfg), "--out", str(out)]) == 0
        lines = (out / "metrics.csv").read_text().splitlines()
        assert len(lines) == 1
        assert lines[0].startswith("name,alpha,k,m,")

    def test_byte_stable_outputs(self, suite_file, tmp_path):
        out1, out2 = tmp_path / "o1", tmp_path / "o2"
        main(["run", "--config", str(suite_file), "--out", str(out1)])
        main(["run", "--config", str(suite_file), "--out", str(out2)])
        assert (out1 / "metrics.csv").read_bytes() == (out2 / "metrics.csv").read_bytes()

    def test_sweep_expansion(self, tmp_path):
        cfg = tmp_path / "sweep.yaml"
        cfg.write_text(
            "resolution: 32\nsweep:\n  alpha: [0.005, 0.05]\n  k: [100]\n"
            "  m: [1, 3]\n  ssr: [false]\n"
        )
        out = tmp_path / "out"
        assert main(["run", "--config", str(cfg), "--out", str(out)]) == 0
        with open(out / "metrics.csv", newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 4


class TestConfigErrors:
    def test_schema_violation_exit_2(self, tmp_path, capsys):
        cfg = tmp_path / "bad.yaml"
        cfg.write_text("scenarios:\n  - name: x\n    alpha: 1.5\n    k: 100\n    m: 1\n")
        assert main(["run", "--config", str(cfg), "--out", str(tmp_path)]) == 2
        assert "scenarios[0].alpha" in capsys.readouterr().err

    def test_unknown_key_exit_2(self, tmp_path, capsys):
        cfg = tmp_path / "bad.yaml"
        cfg.write_text("scenarios:\n  - name: x\n    alpha: 0.05\n    k: 100\n    m: 1\n    frob: 3\n")
        assert main(["run", "--config", str(cfg), "--out", str(tmp_path)]) == 2
        assert "frob" in capsys.readouterr().err

    def test_duplicate_names_exit_2(self, tmp_path):
        cfg = tmp_path / "bad.yaml"
        cfg.write_text(
            "scenarios:\n"
            "  - {name: x, alpha: 0.05, k: 100, m: 1}\n"
            "  - {name: x, alpha: 0.01, k: 100, m: 1}\n"
        )
        assert main(["run", "--config", str(cfg), "--out", str(tmp_path)]) == 2

    def test_missing_file_exit_2(self, tmp_path):
        assert main(["run", "--config", str(tmp_path / "nope.yaml"), "--out", str(tmp_path)]) == 2

    def test_domain_error_exit_1(self, tmp_path, capsys):
        """delta = 0 makes every grid power level unattainable."""
        cfg = tmp_path / "null.yaml"
        cfg.write_text(
            "resolution: 32\nscenarios:\n"
            "  - {name: x, alpha: 0.05, k: 100, m: 1, delta: 0.0}\n"
        )
        assert main(["run", "--config", str(cfg), "--out", str(tmp_path)]) == 1


class TestMcValidate:
    def test_small_run_passes(self, tmp_path, capsys):
        cfg = tmp_path / "one.yaml"
        cfg.write_text(
            "resolution: 64\nscenarios:\n  - {name: base, alpha: 0.05, k: 100, m: 1}\n"
        )
        out = tmp_path / "mc"
        code = main(
            [
                "mc-validate", "--config", str(cfg), "--seed", "4",
                "--studies", "30000", "--out", str(out),
            ]
        )
        assert code == 0
        text = capsys.readouterr().out
        assert "base rel:" in text
        with open(out / "mc_report.csv", newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert {r["metric"] for r in rows} == {"pr", "rel", "stpr"}
        assert all(r["passed"] == "true" for r in rows)

    def test_study_log_written(self, tmp_path):
        cfg = tmp_path / "one.yaml"
        cfg.write_text(
            "resolution: 48\nscenarios:\n  - {name: base, alpha: 0.05, k: 100, m: 1}\n"
        )
        logs = tmp_path / "logs"
        code = main(
            [
                "mc-validate", "--config", str(cfg), "--seed", "4",
                "--studies", "2000", "--study-log", str(logs),
            ]
        )
        assert code == 0
        assert (logs / "base_studies.csv").exists()


class TestDumpGrid:
    def test_dump(self, suite_file, tmp_path):
        out = tmp_path / "grid.csv"
        code = main(
            [
                "dump-grid", "--config", str(suite_file), "--scenario", "baseline",
                "--out", str(out), "--resolution", "20",
            ]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "psp,pwr,n,q11P,q01P,q_ppP,w_res,w_atm,w_pub"
        assert len(lines) == 1 + 400

    def test_unknown_scenario_exit_2(self, suite_file, tmp_path):
        code = main(
            [
                "dump-grid", "--config", str(suite_file), "--scenario", "nope",
                "--out", str(tmp_path / "g.csv"),
            ]
        )
        assert code == 2


class TestReproduceTables:
    def test_low_resolution_smoke(self, tmp_path):
        out = tmp_path / "tables"
        code = main(["reproduce-tables", "--out", str(out), "--resolution", "32"])
        assert code == 0
        expected = {
            "baseline_metrics.csv": 1 + 9,
            "alpha_comparison.csv": 1 + 9,
            "ssr_comparison.csv": 1 + 9,
            "ssr_low_alpha_comparison.csv": 1 + 9,
            "iqr_no_ssr.csv": 1 + 18,
            "iqr_ssr.csv": 1 + 18,
            "metrics_all.csv": 1 + 72,
        }
        for filename, n_lines in expected.items():
            lines = (out / filename).read_text().splitlines()
            assert len(lines) == n_lines, filename
        assert (out / "metrics_all.json").exists()
