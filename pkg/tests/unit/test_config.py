"""Unit tests for experiment configuration."""

from pathlib import Path

import pytest

from online_mssc.exceptions import BadConfigError
from online_mssc.harness import ExperimentConfig, build_config, load_config_file

pytestmark = pytest.mark.unit


def test_defaults():
    config = build_config({})
    assert config.command == "simulate"
    assert config.algorithm == "dlm"
    assert (config.n, config.r, config.m) == (8, 2, 50)
    assert config.format == "json"


def test_yaml_with_overrides(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text("command: oracle\nn: 5\nr: 3\nseed: 7\ncount: 4\n")
    config = build_config({"seed": 9, "count": None}, config_file=path)
    assert config.command == "oracle"
    assert config.n == 5
    assert config.seed == 9
    assert config.count == 4


def test_paths_expanded():
    config = ExperimentConfig(instance="~/inst.json", out="")
    assert config.instance == Path("~/inst.json").expanduser()
    assert config.out is None


def test_empty_file(tmp_path):
    path = tmp_path / "empty.yaml"
    path.write_text("")
    assert load_config_file(path) == {}


@pytest.mark.parametrize(
    "text,message",
    [("- a\n- b\n", "mapping"), ("n: [1,\n", "invalid YAML")],
)
def test_bad_files(tmp_path, text, message):
    path = tmp_path / "bad.yaml"
    path.write_text(text)
    with pytest.raises(BadConfigError, match=message):
        load_config_file(path)


def test_missing_file(tmp_path):
    with pytest.raises(BadConfigError, match="cannot read"):
        load_config_file(tmp_path / "absent.yaml")


@pytest.mark.parametrize(
    "overrides,message",
    [
        ({"algorithm": "dlm_c"}, "dlm_c needs c"),
        ({"command": "lowerbound"}, "lowerbound needs c"),
        ({"n": 3, "r": 4}, "exceeds"),
        ({"seed": -1}, "seed"),
        ({"algorithm": "mtf"}, "algorithm"),
        ({"format": "xml"}, "format"),
        ({"c": 0, "algorithm": "dlm_c"}, "c"),
    ],
)
def test_invalid(overrides, message):
    with pytest.raises(BadConfigError, match=message):
        build_config(overrides)


def test_lowerbound_ignores_generator_sizes():
    config = build_config({"command": "lowerbound", "r": 4, "c": 2, "n": 3})
    assert config.r == 4
