"""Unit tests for Pydantic settings."""

from pathlib import Path
from unittest.mock import patch

import pytest

from online_mssc.settings import Settings, get_settings

pytestmark = pytest.mark.unit


def test_defaults():
    with patch.dict("os.environ", {}, clear=True):
        settings = Settings(_env_file=None)
        assert settings.log_level == "INFO"
        assert settings.output_dir == Path("runs")
        assert settings.check_invariants is True
        assert settings.workers == 1


def test_env_overrides():
    with patch.dict(
        "os.environ",
        {
            "MSSC_LOG_LEVEL": "debug",
            "MSSC_OUTPUT_DIR": "~/mssc-runs",
            "MSSC_CHECK_INVARIANTS": "false",
            "MSSC_WORKERS": "4",
        },
        clear=True,
    ):
        settings = get_settings()
        assert settings.log_level == "DEBUG"
        assert settings.output_dir == Path("~/mssc-runs").expanduser()
        assert settings.check_invariants is False
        assert settings.workers == 4


def test_env_file(tmp_path, monkeypatch):
    monkeypatch.delenv("MSSC_OUTPUT_DIR", raising=False)
    (tmp_path / ".env").write_text("MSSC_WORKERS=3\n")
    monkeypatch.chdir(tmp_path)
    assert get_settings().workers == 3


def test_workers_must_be_positive():
    with patch.dict("os.environ", {"MSSC_WORKERS": "0"}, clear=True):
        with pytest.raises(ValueError):
            Settings(_env_file=None)
