"""
Tests for argument parsing and exit-code mapping in main.py.
"""
import json
from unittest.mock import patch

import pytest

import main
from cli import COMMANDS, load_run_config


@pytest.fixture(autouse=True)
def quiet_session():
    with patch("main.start_new_session"), patch("main.set_global_log_level"), patch("main.configure_threads"):
        yield


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "zero.json"
    path.write_text(json.dumps({
        "potential": {"kind": "square_well", "V0": 0.0, "a": 2.0},
        "energies": {"values": [1.0]},
        "grid": {"n_r": 4, "n_theta": 4, "n_phi": 8, "r_max": 2.0},
        "verify": {"born_check": None, "square_well_oracle": None, "bound_state_threshold": None},
    }), encoding="utf-8")
    return path


class TestParser:
    def test_arguments(self):
        args = main.build_parser().parse_args(
            ["scatter", "-c", "run.json", "--out", "o", "--format", "csv", "--format", "json", "--dump-grids", "-q"]
        )
        assert args.command == "scatter"
        assert args.config == "run.json"
        assert args.formats == ["csv", "json"]
        assert args.dump_grids and args.quiet and not args.debug

    def test_rejects_unknown_command(self):
        with pytest.raises(SystemExit):
            main.build_parser().parse_args(["plot", "-c", "run.json"])

    def test_debug_and_quiet_exclusive(self):
        with pytest.raises(SystemExit):
            main.build_parser().parse_args(["verify", "-c", "run.json", "--debug", "--quiet"])


class TestExitCodes:
    def test_success_writes_to_out(self, config_file, tmp_path):
        out = tmp_path / "results"
        assert main.run(["scatter", "--config", str(config_file), "--out", str(out)]) == 0
        assert (out / "cross_sections.csv").exists()

    def test_verify_end_to_end(self, config_file, tmp_path):
        out = tmp_path / "verify"
        assert main.run(["verify", "--config", str(config_file), "--out", str(out)]) == 0
        report = json.loads((out / "verification_report.json").read_text(encoding="utf-8"))
        assert report["passed"] is True
        assert report["config_hash"] == load_run_config(config_file).config_hash

    def test_missing_config(self, tmp_path):
        assert main.run(["scatter", "--config", str(tmp_path / "absent.json")]) == 2

    def test_invalid_config(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"potential": {"kind": "gaussian", "g": -1.0, "a": -1.0}}), encoding="utf-8")
        assert main.run(["verify", "--config", str(path)]) == 2

    def test_non_radial_phaseshifts(self, tmp_path):
        path = tmp_path / "offset.json"
        path.write_text(json.dumps({
            "potential": {"kind": "gaussian_off_center", "g": -1.0, "a": 1.0, "center": [1.0, 0.0, 0.0]},
        }), encoding="utf-8")
        assert main.run(["phaseshifts", "--config", str(path), "--out", str(tmp_path / "o")]) == 2

    def test_command_status_is_returned(self, config_file, tmp_path):
        with patch.dict(COMMANDS, {"verify": lambda config: 1}):
            assert main.run(["verify", "--config", str(config_file), "--out", str(tmp_path)]) == 1

    def test_unexpected_exception(self, config_file, tmp_path):
        def broken(config):
            raise RuntimeError("boom")

        with patch.dict(COMMANDS, {"scatter": broken}):
            assert main.run(["scatter", "--config", str(config_file), "--out", str(tmp_path)]) == 2

    def test_profile(self, config_file, tmp_path):
        stats = tmp_path / "profile.stats"
        with patch.dict(COMMANDS, {"scatter": lambda config: 0}):
            assert main.run(["scatter", "-c", str(config_file), "-o", str(tmp_path), "-p", str(stats)]) == 0
        assert stats.exists()
