import os

from fc_poincare.utils.config_loader import (
    VerifySettings,
    default_config_path,
    load_verify_settings,
    load_yaml_config,
)


def test_missing_file_gives_empty_dict(tmp_path):
    assert load_yaml_config(str(tmp_path / "absent.yaml")) == {}


def test_malformed_yaml_gives_empty_dict(tmp_path):
    path = tmp_path / "broken.yaml"
    path.write_text("permutation_cap: [unclosed\n")
    assert load_yaml_config(str(path)) == {}


def test_non_mapping_gives_empty_dict(tmp_path):
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n")
    assert load_yaml_config(str(path)) == {}


def test_empty_file_gives_empty_dict(tmp_path):
    path = tmp_path / "empty.yaml"
    path.write_text("")
    assert load_yaml_config(str(path)) == {}


def test_values_override_defaults(tmp_path):
    path = tmp_path / "verify.yaml"
    path.write_text("permutation_cap: 9\nrandom_instances: 10\n")
    settings = load_verify_settings(str(path))
    assert settings.permutation_cap == 9
    assert settings.random_instances == 10
    assert settings.chain_warning_rank == VerifySettings().chain_warning_rank


def test_invalid_values_fall_back_to_defaults(tmp_path):
    path = tmp_path / "verify.yaml"
    path.write_text("permutation_cap: 0\n")
    assert load_verify_settings(str(path)) == VerifySettings()


def test_missing_config_uses_defaults(tmp_path):
    assert load_verify_settings(str(tmp_path / "nope.yaml")) == VerifySettings()


def test_env_var_selects_config(tmp_path, monkeypatch):
    path = tmp_path / "custom.yaml"
    path.write_text("oracle_count_limit: 5\n")
    monkeypatch.setenv("FCPOINCARE_CONFIG", str(path))
    assert default_config_path() == str(path)
    assert load_verify_settings().oracle_count_limit == 5


def test_shipped_config_matches_defaults(monkeypatch):
    monkeypatch.delenv("FCPOINCARE_CONFIG", raising=False)
    path = default_config_path()
    assert path.endswith(os.path.join("config", "verify_config.yaml"))
    assert os.path.exists(path)
    assert load_verify_settings(path) == VerifySettings()
