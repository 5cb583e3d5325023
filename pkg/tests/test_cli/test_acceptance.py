"""
End-to-end runs of the shipped configurations.

These use the full reference grids and take minutes; run them with `pytest -m slow`.
"""
import json
from pathlib import Path

import pytest

from cli import EXIT_FAILURE, EXIT_OK, cmd_verify, load_run_config

CONFIG_DIR = Path(__file__).resolve().parents[2] / "configs"


def criteria_by_name(path):
    report = json.loads(path.read_text(encoding="utf-8"))
    return {c["name"]: c for c in report["criteria"]}


@pytest.mark.slow
@pytest.mark.integration
@pytest.mark.timeout(7200)
class TestShippedVerification:
    def test_reference_identities(self, tmp_path):
        config = load_run_config(CONFIG_DIR / "reference_gaussian.json").with_overrides(out=str(tmp_path))
        assert cmd_verify(config) == EXIT_OK
        report = json.loads((tmp_path / "verification_report.json").read_text(encoding="utf-8"))
        assert report["passed"] is True
        criteria = criteria_by_name(tmp_path / "verification_report.json")
        for name in ("reconstruction", "parseval", "partial_wave_routes", "trivial_potential",
                     "unitarity", "farfield_decreasing", "eigen_correspondence", "cross_section_ratio",
                     "refinement", "born_limit", "square_well_delta0", "bound_state_threshold"):
            assert criteria[name]["passed"] is True, name
        assert criteria["unitarity"]["value"] < 1e-3
        assert criteria["reconstruction"]["value"] < 1e-10
        assert criteria["parseval"]["value"] < 1e-10
        assert criteria["eigen_correspondence"]["value"] < 1e-2
        assert criteria["cross_section_ratio"]["value"] < 1e-2
        assert criteria["born_limit"]["value"] < 0.02
        assert criteria["square_well_delta0"]["value"] < 1e-6
        assert criteria["refinement"]["value"] < criteria["refinement"]["details"]["coarse_defect"]
        assert criteria["bound_state_threshold"]["details"]["found"] == [0, 1]

    def test_coarse_grid_fails(self, tmp_path):
        config = load_run_config(CONFIG_DIR / "coarse_negative_control.json").with_overrides(out=str(tmp_path))
        assert cmd_verify(config) == EXIT_FAILURE
        criteria = criteria_by_name(tmp_path / "verification_report.json")
        # exact identities survive any grid
        assert criteria["reconstruction"]["passed"] is True
        assert criteria["parseval"]["passed"] is True
