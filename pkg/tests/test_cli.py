from __future__ import annotations

import json

import pytest

from alignlab.cli import cli_dispatch, load_config_file, parse_value


class TestConfigParsing:
    def test_parse_values(self):
        assert parse_value("p", "0.2, 0.3, 0.5") == (0.2, 0.3, 0.5)
        assert parse_value("m_grid", "5,10,20") == (5, 10, 20)
        assert parse_value("trials", "1000") == 1000
        assert parse_value("delta", "0.11") == 0.11
        assert parse_value("conjecture", "true") is True
        assert parse_value("output_dir", "out") == "out"

    def test_load_config_file(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(
            "# demo config\n"
            "experiment = equivalence_scan\n"
            "delta = 0.11\n"
            "m_grid = 5, 10\n"
            "seed = 42\n"
        )
        values = load_config_file(str(cfg))
        assert values == {
            "experiment": "equivalence_scan",
            "delta": 0.11,
            "m_grid": (5, 10),
            "seed": 42,
        }

    def test_unknown_key_rejected(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("mystery = 1\n")
        with pytest.raises(ValueError):
            load_config_file(str(cfg))


class TestDispatch:
    def test_example1_exit_zero(self, tmp_path, capsys):
        code = cli_dispatch(["example1", "--out", str(tmp_path)])
        out = capsys.readouterr().out
        assert code == 0
        assert "PASS" in out and "all checks passed" in out
        assert (tmp_path / "example1_report.json").exists()

    def test_unknown_subcommand_is_usage_error(self, capsys):
        assert cli_dispatch(["mystery"]) == 2

    def test_missing_subcommand_is_usage_error(self, capsys):
        assert cli_dispatch([]) == 2

    def test_bad_flag_value_is_usage_error(self, capsys):
        assert cli_dispatch(["example1", "--seed", "notanint"]) == 2

    def test_equivalence_scan_with_flags(self, tmp_path, capsys):
        code = cli_dispatch(
            ["equivalence-scan", "--delta", "0.11", "--m-grid", "5,10,20,40", "--out", str(tmp_path)]
        )
        assert code == 0
        lines = (tmp_path / "equivalence_scan.csv").read_text().splitlines()
        assert lines[0] == "m,logN,kl_rate_to_optimal,kl_to_reference,kl_bound,reward_gap,type_l1"

    def test_config_file_with_flag_override(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("experiment = example1\nseed = 5\n")
        out_dir = tmp_path / "outputs"
        code = cli_dispatch(["example1", "--config", str(cfg), "--out", str(out_dir)])
        assert code == 0
        report = json.loads((out_dir / "example1_report.json").read_text())
        assert report["seed"] == 5

    def test_bad_config_file_exit_two(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("nonsense_key = 1\n")
        assert cli_dispatch(["example1", "--config", str(cfg)]) == 2
        assert "error" in capsys.readouterr().err

    def test_env_default_output_dir(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("ALIGN_OUT_DIR", str(tmp_path / "from-env"))
        code = cli_dispatch(["example1"])
        assert code == 0
        assert (tmp_path / "from-env" / "example1_report.json").exists()

    def test_infeasible_budget_is_failure_exit(self, tmp_path, capsys):
        code = cli_dispatch(
            ["ternary-figure", "--delta", "1.7", "--out", str(tmp_path / "x")]
        )
        assert code == 1
        assert "error" in capsys.readouterr().err
