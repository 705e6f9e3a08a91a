"""
Tests for configuration loading and validation.
"""

import pytest

from kqlab.config import ALL_SCENARIOS, PROFILE_ENV, Config
from kqlab.errors import ConfigError


def test_defaults():
    config = Config()
    assert config.trunc_dim == 3
    assert config.ex_stages == 2
    assert config.horn_dim == 3
    assert config.small_horn_dim == 2
    assert config.round_cap == 3
    assert config.max_cells == 20000
    assert config.enabled_scenarios == ALL_SCENARIOS
    assert not config.beyond_validated_range


def test_profiles():
    small = Config.for_profile("small")
    assert small.profile == "small"
    assert small.trunc_dim == 2
    assert not small.beyond_validated_range
    assert Config.for_profile("large").beyond_validated_range
    with pytest.raises(ConfigError):
        Config.for_profile("huge")


def test_profile_from_environment(monkeypatch):
    monkeypatch.setenv(PROFILE_ENV, "small")
    assert Config.for_profile().profile == "small"
    monkeypatch.delenv(PROFILE_ENV)
    assert Config.for_profile().profile == "default"


def test_from_file(tmp_path):
    path = tmp_path / "kqlab.conf"
    path.write_text("# caps\n\ntrunc_dim 2\nscenarios S1, s2 S10\nformat text\n")
    config = Config.from_file(str(path))
    assert config.trunc_dim == 2
    assert config.scenarios == ["S1", "S2", "S10"]
    assert config.format == "text"


def test_from_file_reports_line_and_field(tmp_path):
    path = tmp_path / "kqlab.conf"
    path.write_text("trunc_dim 2\nmax_maps lots\n")
    with pytest.raises(ConfigError) as excinfo:
        Config.from_file(str(path))
    assert excinfo.value.line == 2
    assert excinfo.value.field == "max_maps"
    assert "line 2" in str(excinfo.value)


def test_unknown_key(tmp_path):
    path = tmp_path / "kqlab.conf"
    path.write_text("colour blue\n")
    with pytest.raises(ConfigError) as excinfo:
        Config.from_file(str(path))
    assert excinfo.value.line == 1
    assert excinfo.value.field == "colour"


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        Config.from_file(str(tmp_path / "absent.conf"))


@pytest.mark.parametrize("key,value", [("trunc_dim", "0"), ("round_cap", "-1"),
                                       ("scenarios", "S11"), ("trunc_dim", "9")])
def test_validate_rejects_out_of_range(key, value):
    with pytest.raises(ConfigError) as excinfo:
        Config().with_value(key, value).validate()
    assert excinfo.value.field == key


def test_choice_fields():
    assert Config().with_value("loglevel", "debug").loglevel == "debug"
    with pytest.raises(ConfigError):
        Config().with_value("format", "xml")


def test_profile_override_keeps_other_settings():
    config = Config().with_value("workers", "4").with_value("profile", "small")
    assert config.profile == "small"
    assert config.trunc_dim == 2
    assert config.workers == 4


def test_disable_removes_scenarios():
    config = Config().with_value("disable", "S9 S3")
    assert "S9" not in config.enabled_scenarios
    assert "S3" not in config.enabled_scenarios
    assert config.enabled_scenarios[0] == "S1"


def test_beyond_validated_range():
    assert Config().with_value("horn_dim", "5").beyond_validated_range
