#!/usr/bin/env python

import pytest
from loguru import logger

from schottkit.utils.logger_setup import set_loglevel
from schottkit.utils.utils import ParseError


@pytest.fixture(autouse=True)
def _restore():
    yield
    set_loglevel("WARNING")


def test_no_color_env(monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    assert set_loglevel("INFO") is False


def test_explicit_color_wins(monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    assert set_loglevel("info", color=True) is True


def test_logfile_receives_messages(tmp_path):
    path = tmp_path / "run.log"
    set_loglevel("DEBUG", logfile=str(path), color=False)
    logger.debug("rank computation started")
    set_loglevel("WARNING")
    assert "rank computation started" in path.read_text()


def test_unknown_level():
    with pytest.raises(ParseError):
        set_loglevel("LOUD")
