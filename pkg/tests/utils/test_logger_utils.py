"""Tests for the logging setup."""

from __future__ import annotations

import logging
import warnings
from typing import TYPE_CHECKING

import pytest

from utils.logger_utils import RUN_LOG_NAME, LoggerUtils

if TYPE_CHECKING:
    from collections.abc import Iterator
    from pathlib import Path


@pytest.fixture
def namespace_logger(monkeypatch: pytest.MonkeyPatch) -> Iterator[logging.Logger]:
    """The namespace logger with handlers, level and singleton state restored afterwards."""
    target: logging.Logger = LoggerUtils.get_logger()
    handlers: list[logging.Handler] = list(target.handlers)
    level: int = target.level
    monkeypatch.setattr(LoggerUtils, "_configured", False)
    monkeypatch.setattr(LoggerUtils, "_instance", None)
    monkeypatch.setattr(warnings, "showwarning", warnings.showwarning)
    yield target
    for handler in list(target.handlers):
        if handler not in handlers:
            target.removeHandler(handler)
            handler.close()
    target.setLevel(level)


def test_get_logger_nests_under_namespace() -> None:
    assert LoggerUtils.get_logger("core.solver").name == "HarmonicFlow.core.solver"
    assert LoggerUtils.get_logger().name == "HarmonicFlow"


def test_run_log_captures_module_records(tmp_path: Path, namespace_logger: logging.Logger) -> None:
    namespace_logger.setLevel(logging.INFO)
    module_logger = LoggerUtils.get_logger("core.scenarios.test")
    before: int = len(namespace_logger.handlers)
    with LoggerUtils.run_log(tmp_path) as path:
        module_logger.info("Evolving to T=%.3g", 0.5)
        module_logger.debug("hidden at INFO")
    assert path == tmp_path / RUN_LOG_NAME
    assert path.read_text(encoding="utf-8").splitlines() == [
        "INFO     HarmonicFlow.core.scenarios.test: Evolving to T=0.5"
    ]
    assert len(namespace_logger.handlers) == before


def test_run_log_truncates_previous_file(tmp_path: Path, namespace_logger: logging.Logger) -> None:
    _ = namespace_logger
    (tmp_path / RUN_LOG_NAME).write_text("stale\n", encoding="utf-8")
    with LoggerUtils.run_log(tmp_path):
        LoggerUtils.get_logger("x").warning("fresh")
    assert (tmp_path / RUN_LOG_NAME).read_text(encoding="utf-8") == "WARNING  HarmonicFlow.x: fresh\n"


def test_run_log_restores_level(tmp_path: Path, namespace_logger: logging.Logger) -> None:
    namespace_logger.setLevel(logging.NOTSET)
    with LoggerUtils.run_log(tmp_path):
        assert namespace_logger.level == logging.INFO
    assert namespace_logger.level == logging.NOTSET


def test_configure_worker_sets_level_without_console(namespace_logger: logging.Logger) -> None:
    existing: list[logging.Handler] = list(namespace_logger.handlers)
    LoggerUtils.configure_worker(logging.DEBUG)
    assert namespace_logger.level == logging.DEBUG
    assert LoggerUtils.current_level() == logging.DEBUG
    added = [h for h in namespace_logger.handlers if h not in existing]
    assert all(isinstance(h, logging.NullHandler) for h in added)


def test_set_level_unknown_falls_back_to_info(tmp_path: Path, namespace_logger: logging.Logger) -> None:
    log_setup = LoggerUtils(filename=tmp_path / "harmonicflow.log", use_null_console=True)
    log_setup.set_level("DEBUG")
    assert log_setup.get_level().name == "DEBUG"
    log_setup.set_level("LOUD")  # type: ignore[arg-type]
    assert namespace_logger.level == logging.INFO


def test_warnings_are_logged(tmp_path: Path, namespace_logger: logging.Logger) -> None:
    _ = namespace_logger
    LoggerUtils(filename="", use_null_console=True)
    with LoggerUtils.run_log(tmp_path) as path, warnings.catch_warnings():
        warnings.simplefilter("always")
        warnings.warn("overflow in exp", RuntimeWarning, stacklevel=1)
    assert "RuntimeWarning: overflow in exp" in path.read_text(encoding="utf-8")
