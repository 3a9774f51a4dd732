"""Tests for configuration loading and layering."""

import json
from pathlib import Path

import pytest

from quadmartin.shared import config as config_module
from quadmartin.shared.config import QuadMartinConfig, get_config, set_config
from quadmartin.shared.exceptions import ConfigurationError

pytestmark = pytest.mark.unit


def test_defaults() -> None:
    config = QuadMartinConfig()
    assert config.model.z0 == (1.0, 1.0)
    assert config.series.tol == 1e-12
    assert config.montecarlo.seed is None
    assert config.logging.level == "WARNING"


class TestEnvironment:
    def test_flat_variables(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("QUADMARTIN_MU1", "0.2")
        monkeypatch.setenv("QUADMARTIN_SEED", "42")
        monkeypatch.setenv("QUADMARTIN_LOG_LEVEL", "debug")
        monkeypatch.setenv("QUADMARTIN_DEBUG", "yes")
        config = QuadMartinConfig.from_env()
        assert config.model.mu1 == 0.2
        assert config.montecarlo.seed == 42
        assert config.logging.level == "DEBUG"
        assert config.debug

    def test_invalid_value_names_the_key(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("QUADMARTIN_N_PATHS", "one")
        with pytest.raises(ConfigurationError) as excinfo:
            QuadMartinConfig.from_env()
        assert excinfo.value.key == "montecarlo.n_paths"
        assert excinfo.value.exit_code == 2

    def test_global_instance_is_cached(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("QUADMARTIN_R2", "2")
        first = get_config()
        assert first.model.r2 == 2.0
        assert get_config() is first
        replacement = QuadMartinConfig()
        set_config(replacement)
        assert config_module.get_config() is replacement


class TestKeyValues:
    def test_parse_with_comments(self) -> None:
        text = "# model\nmu1 = 0.2\nmu2=0.8  # drift\n\nmontecarlo.dt = 0.01\n"
        data = QuadMartinConfig.parse_key_values(text)
        assert data == {"model": {"mu1": "0.2", "mu2": "0.8"}, "montecarlo": {"dt": "0.01"}}

    def test_line_without_equals(self) -> None:
        with pytest.raises(ConfigurationError, match="line 2"):
            QuadMartinConfig.parse_key_values("mu1=0.2\nmu2 0.8\n")

    def test_unknown_key(self) -> None:
        with pytest.raises(ConfigurationError) as excinfo:
            QuadMartinConfig.parse_key_values("drift=0.3")
        assert excinfo.value.key == "drift"


class TestFiles:
    def test_key_value_file(self, tmp_path: Path) -> None:
        path = tmp_path / "run.cfg"
        path.write_text("mu1=0.2\nmu2=0.8\nr2=2\nseed=7\n")
        config = QuadMartinConfig.from_file(path)
        assert (config.model.mu1, config.model.mu2, config.model.r2) == (0.2, 0.8, 2.0)
        assert config.montecarlo.seed == 7

    def test_json_file_with_sections(self, tmp_path: Path) -> None:
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"model": {"r1": 0.5}, "tol": 1e-10}))
        config = QuadMartinConfig.from_file(path)
        assert config.model.r1 == 0.5
        assert config.series.tol == 1e-10

    def test_json_must_be_an_object(self, tmp_path: Path) -> None:
        path = tmp_path / "run.json"
        path.write_text("[1, 2]")
        with pytest.raises(ConfigurationError, match="object"):
            QuadMartinConfig.from_file(path)

    def test_malformed_toml(self, tmp_path: Path) -> None:
        path = tmp_path / "run.toml"
        path.write_text("[model\nmu1 = ")
        with pytest.raises(ConfigurationError, match="cannot read"):
            QuadMartinConfig.from_file(path)

    def test_file_is_layered_on_base(self, tmp_path: Path) -> None:
        path = tmp_path / "run.cfg"
        path.write_text("mu1=0.3\n")
        base = QuadMartinConfig().merged({"seed": 5, "mu2": 0.7})
        config = QuadMartinConfig.from_file(path, base=base)
        assert config.model.mu1 == 0.3
        assert config.model.mu2 == 0.7
        assert config.montecarlo.seed == 5

    def test_save_and_reload(self, tmp_path: Path) -> None:
        path = tmp_path / "saved.toml"
        original = QuadMartinConfig().merged({"mu1": 0.25, "mu2": 0.75, "seed": 3, "epsilon": 0.05})
        original.save_to_file(path)
        assert QuadMartinConfig.from_file(path) == original

    def test_save_to_missing_directory(self, tmp_path: Path) -> None:
        with pytest.raises(ConfigurationError, match="cannot write"):
            QuadMartinConfig().save_to_file(tmp_path / "missing" / "saved.toml")


class TestMerged:
    def test_none_values_are_ignored(self) -> None:
        config = QuadMartinConfig().merged({"mu1": None, "r1": 0.4})
        assert config.model.mu1 == 0.5
        assert config.model.r1 == 0.4

    def test_dotted_keys_and_debug(self) -> None:
        config = QuadMartinConfig().merged({"quadrature.rel_tol": 1e-6, "debug": True})
        assert config.quadrature.rel_tol == 1e-6
        assert config.debug

    def test_invalid_override(self) -> None:
        with pytest.raises(ConfigurationError) as excinfo:
            QuadMartinConfig().merged({"threads": 0})
        assert excinfo.value.key == "montecarlo.threads"

    def test_log_level_is_validated(self) -> None:
        with pytest.raises(ConfigurationError, match="Invalid log level"):
            QuadMartinConfig().merged({"log_level": "loud"})
