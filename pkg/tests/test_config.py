import json
import logging

import pytest

from partdim.config import DEFAULT_METRIC_MAX_N, DEFAULT_PARTITION_MAX_N, configure_logging, get_settings
from partdim.errors import InvalidParams
from partdim.utils import parse_int_range


def test_defaults(tmp_path):
    settings = get_settings()
    assert settings.metric_max_n == DEFAULT_METRIC_MAX_N
    assert settings.partition_max_n == DEFAULT_PARTITION_MAX_N
    assert settings.jobs == 1
    assert settings.dump_dir == str(tmp_path / "dumps")
    assert settings.log_level == "WARNING"
    assert settings.sweep_pd_max_n == 9


def test_individual_limits(monkeypatch):
    monkeypatch.setenv("PARTDIM_METRIC_MAX_N", "10")
    monkeypatch.setenv("PARTDIM_PARTITION_MAX_N", "8")
    monkeypatch.setenv("PARTDIM_JOBS", "4")
    monkeypatch.setenv("PARTDIM_LOG_LEVEL", "debug")
    settings = get_settings()
    assert (settings.metric_max_n, settings.partition_max_n, settings.jobs) == (10, 8, 4)
    assert settings.log_level == "DEBUG"


def test_global_override(monkeypatch):
    monkeypatch.setenv("PARTDIM_PARTITION_MAX_N", "8")
    monkeypatch.setenv("PARTDIM_MAX_N", "13")
    settings = get_settings()
    assert settings.metric_max_n == settings.partition_max_n == 13


@pytest.mark.parametrize("value", ["abc", "0", "-3"])
def test_bad_values(monkeypatch, value):
    monkeypatch.setenv("PARTDIM_JOBS", value)
    with pytest.raises(InvalidParams, match="PARTDIM_JOBS"):
        get_settings()


def test_blank_value_means_default(monkeypatch):
    monkeypatch.setenv("PARTDIM_METRIC_MAX_N", " ")
    assert get_settings().metric_max_n == DEFAULT_METRIC_MAX_N


def test_json_logging(capsys):
    configure_logging("INFO", json_format=True)
    try:
        logging.getLogger("partdim.test").info("hello")
        record = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert record["message"] == "hello"
        assert record["levelname"] == "INFO"
        assert record["name"] == "partdim.test"
    finally:
        root = logging.getLogger()
        root.handlers.clear()
        root.setLevel(logging.WARNING)


class TestParseIntRange:
    def test_single(self):
        assert parse_int_range("6") == [6]

    def test_range(self):
        assert parse_int_range("3..6") == [3, 4, 5, 6]

    @pytest.mark.parametrize("text", ["", "a..b", "3..", "7..2"])
    def test_invalid(self, text):
        with pytest.raises(InvalidParams):
            parse_int_range(text)
