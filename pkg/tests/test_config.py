"""Tests for environment-driven configuration."""

import pytest

from elam.config import Config


def test_defaults(monkeypatch):
    monkeypatch.delenv("ELAM_FUEL", raising=False)
    monkeypatch.delenv("ELAM_LOG_LEVEL", raising=False)
    config = Config()
    assert config.fuel == 10000
    assert config.log_level == "WARNING"


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("ELAM_FUEL", "50")
    monkeypatch.setenv("ELAM_ORACLE_MAX_VALUE_SIZE", "3")
    config = Config.load()
    assert config.fuel == 50
    assert config.budget().max_value_size == 3


@pytest.mark.parametrize("name,value", [("ELAM_FUEL", "0"), ("ELAM_LOG_LEVEL", "LOUD")])
def test_validate_rejects(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ValueError):
        Config().validate()


def test_validate_accepts_lowercase_levels(monkeypatch):
    monkeypatch.setenv("ELAM_LOG_LEVEL", "debug")
    Config().validate()
