"""
Tests for run-configuration loading and the config hash in cli/config.py.
"""
import json
from pathlib import Path

import pytest

from cli.config import GridConfig, load_run_config, run_config_from_mapping
from potentials import PotentialKind
from utils.errors import ConfigError

CONFIG_DIR = Path(__file__).resolve().parents[2] / "configs"

MINIMAL = {"potential": {"kind": "gaussian", "g": -2.0, "a": 1.0}}


def with_section(**sections):
    data = dict(MINIMAL)
    data.update(sections)
    return data


class TestShippedConfigs:
    @pytest.mark.parametrize("name", [
        "reference_gaussian.json", "square_well.json", "yukawa_born.json",
        "zero_potential.json", "coarse_negative_control.json",
    ])
    def test_loads(self, name):
        config = load_run_config(CONFIG_DIR / name)
        assert config.energies
        assert config.source.endswith(name)
        assert len(config.config_hash) == 64

    def test_zero_potential_disables_oracles(self):
        config = load_run_config(CONFIG_DIR / "zero_potential.json")
        assert config.spec.is_zero
        assert config.verify.born_check is None
        assert config.output.formats == ("csv", "json")


class TestRunConfigFromMapping:
    def test_defaults(self):
        config = run_config_from_mapping(MINIMAL)
        assert config.spec.kind is PotentialKind.GAUSSIAN
        assert config.energies == (1.0,)
        assert config.grid == GridConfig()
        assert config.output.formats == ("csv",)
        assert config.verify.born_check is not None

    def test_energy_range(self):
        config = run_config_from_mapping(with_section(energies={"start": 0.5, "stop": 2.0, "step": 0.5}))
        assert config.energies == pytest.approx((0.5, 1.0, 1.5, 2.0))

    def test_grid_radius_falls_back_to_support(self):
        config = run_config_from_mapping({"potential": {"kind": "square_well", "V0": 3.0, "a": 1.5},
                                          "grid": {"r_max": None}})
        assert config.grid_radius() == 1.5

    def test_optional_checks_null(self):
        config = run_config_from_mapping(with_section(verify={"born_check": None, "square_well_oracle": None}))
        assert config.verify.born_check is None
        assert config.verify.square_well_oracle is None
        assert config.verify.bound_state_threshold is not None

    @pytest.mark.parametrize("data", [
        {},
        with_section(unknown={}),
        with_section(grid={"n_r": 8, "nr": 8}),
        with_section(grid={"n_phi": 7}),
        with_section(grid={"n_theta": 1}),
        with_section(energies={"values": []}),
        with_section(energies={"values": [1.0, -1.0]}),
        with_section(energies={"start": 2.0, "stop": 1.0, "step": 0.5}),
        with_section(energies={"start": 1.0}),
        with_section(output={"formats": ["xml"]}),
        with_section(boundstates={"kappa_range": [2.0, 1.0]}),
        with_section(verify={"born_check": 3}),
        {"potential": {"kind": "coulomb", "g": 1.0}},
        {"potential": {"kind": "gaussian", "g": -1.0}},
    ])
    def test_rejects(self, data):
        with pytest.raises(ConfigError):
            run_config_from_mapping(data)


class TestConfigHash:
    def test_deterministic(self):
        assert run_config_from_mapping(MINIMAL).config_hash == run_config_from_mapping(MINIMAL).config_hash

    def test_ignores_output_location(self, tmp_path):
        config = run_config_from_mapping(MINIMAL, source="a.json")
        moved = config.with_overrides(out=str(tmp_path))
        assert moved.output.directory == str(tmp_path)
        assert moved.config_hash == config.config_hash
        assert "directory" not in config.to_mapping()["output"]

    def test_sensitive_to_inputs(self):
        base = run_config_from_mapping(MINIMAL).config_hash
        assert run_config_from_mapping(with_section(energies={"values": [2.0]})).config_hash != base
        assert run_config_from_mapping(with_section(grid={"n_r": 10})).config_hash != base

    def test_integral_floats_hash_like_ints(self):
        a = run_config_from_mapping(with_section(energies={"values": [1.0]}))
        b = run_config_from_mapping(with_section(energies={"values": [1]}))
        assert a.config_hash == b.config_hash

    def test_integral_potential_parameters_hash_like_ints(self):
        a = run_config_from_mapping({"potential": {"kind": "gaussian", "g": -2.0, "a": 1.0}})
        b = run_config_from_mapping({"potential": {"kind": "gaussian", "g": -2, "a": 1}})
        assert a.config_hash == b.config_hash
        c = run_config_from_mapping({"potential": {"kind": "gaussian", "g": -2.5, "a": 1.0}})
        assert c.config_hash != a.config_hash

    @pytest.mark.parametrize("name", ["reference_gaussian.json", "coarse_negative_control.json"])
    def test_mapping_is_plain_json(self, name):
        config = load_run_config(CONFIG_DIR / name)
        mapping = config.to_mapping()
        assert set(mapping) == {"potential", "energies", "grid", "radial", "boundstates", "verify", "solver",
                                "output"}
        assert mapping["potential"] == dict(config.potential.section)
        decoded = json.loads(json.dumps(mapping))
        assert decoded["grid"] == mapping["grid"]
        assert "directory" not in decoded["output"]
        assert len(config.config_hash) == 64


class TestOverridesAndLoading:
    def test_formats_override(self):
        config = run_config_from_mapping(MINIMAL).with_overrides(formats=("json", "csv", "json"), dump_grids=True)
        assert config.output.formats == ("json", "csv")
        assert config.output.dump_grids

    def test_bad_format_override(self):
        with pytest.raises(ConfigError):
            run_config_from_mapping(MINIMAL).with_overrides(formats=("pdf",))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            load_run_config(tmp_path / "missing.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ConfigError, match="not valid JSON"):
            load_run_config(path)

    def test_relative_table_file(self, tmp_path):
        (tmp_path / "table.txt").write_text("# r V\n0.5 -1.0\n1.0 -0.5\n2.0 0.0\n", encoding="utf-8")
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"potential": {"kind": "tabulated_radial", "file": "table.txt"}}),
                        encoding="utf-8")
        config = load_run_config(path)
        assert config.spec.kind is PotentialKind.TABULATED_RADIAL
        assert config.spec.support_radius == 2.0


class TestGridConfig:
    def test_coarsened(self):
        assert GridConfig(24, 12, 24, 6.0).coarsened() == GridConfig(12, 6, 12, 6.0)
        assert GridConfig(5, 3, 6, None).coarsened() == GridConfig(2, 2, 4, None)
