"""Tests for the command-line entry point."""

from __future__ import annotations

import importlib
from textwrap import dedent
from typing import TYPE_CHECKING

import pytest

import harmonicflow

if TYPE_CHECKING:
    from pathlib import Path


def _write_ini(tmp_path: Path, content: str) -> Path:
    ini_path: Path = tmp_path / "harmonicflow.ini"
    ini_path.write_text(dedent(content), encoding="utf-8")
    return ini_path


@pytest.fixture(autouse=True)
def _in_tmp(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("HARMONICFLOW_OUTPUT_ROOT", raising=False)


QUICK_RUN: str = """
    [GENERAL]
    SCENARIO = "stationary"

    [FLOW]
    T = 0.3

    [GRID]
    N = 128

    [SOLVER]
    DT_INITIAL = 1e-3
    """


def test_module_reloads_cleanly() -> None:
    module = importlib.reload(harmonicflow)
    assert module.logger.name == "HarmonicFlow.harmonicflow"
    assert module.load_config.__annotations__["return"] == "Config"


class TestParseArguments:
    def test_defaults(self) -> None:
        args = harmonicflow.parse_arguments([])
        assert args.config == "harmonicflow.ini"
        assert args.scenario is None
        assert args.jobs is None
        assert args.debug is False

    def test_overrides(self) -> None:
        args = harmonicflow.parse_arguments(["--scenario", "sweep", "--jobs", "4", "--seed", "3", "-d"])
        assert args.scenario == "sweep"
        assert args.jobs == 4
        assert args.seed == 3
        assert args.debug is True

    def test_bad_integer_exits_with_usage(self, capsys: pytest.CaptureFixture[str]) -> None:
        with pytest.raises(SystemExit) as excinfo:
            harmonicflow.parse_arguments(["--jobs", "many"])
        assert excinfo.value.code == 2
        assert "usage" in capsys.readouterr().err

    def test_version(self, capsys: pytest.CaptureFixture[str]) -> None:
        with pytest.raises(SystemExit) as excinfo:
            harmonicflow.parse_arguments(["--version"])
        assert excinfo.value.code == 0
        assert "0.4.0" in capsys.readouterr().out


class TestMain:
    def test_missing_config(self, tmp_path: Path) -> None:
        assert harmonicflow.main(["--config", str(tmp_path / "absent.ini")]) == harmonicflow.EXIT_CONFIG_ERROR

    def test_invalid_value(self, tmp_path: Path) -> None:
        ini_path = _write_ini(tmp_path, "[FLOW]\nK = 0\n")
        assert harmonicflow.main(["--config", str(ini_path)]) == harmonicflow.EXIT_CONFIG_ERROR

    def test_scenario_setup_error(self, tmp_path: Path) -> None:
        ini_path = _write_ini(tmp_path, '[BOUNDARY]\nKIND = "four_arctan"\n')
        code = harmonicflow.main(["--config", str(ini_path), "--out", str(tmp_path)])
        assert code == harmonicflow.EXIT_SCENARIO_ERROR

    def test_output_path_is_a_file(self, tmp_path: Path) -> None:
        ini_path = _write_ini(tmp_path, QUICK_RUN)
        (tmp_path / "stationary").write_text("", encoding="utf-8")
        code = harmonicflow.main(["--config", str(ini_path), "--out", str(tmp_path)])
        assert code == harmonicflow.EXIT_IO_ERROR

    def test_stationary_run_succeeds(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        ini_path = _write_ini(tmp_path, QUICK_RUN)
        assert harmonicflow.main(["--config", str(ini_path), "--out", str(tmp_path / "runs")]) == 0
        assert (tmp_path / "runs" / "stationary" / "report.json").is_file()
        assert "stationary: CompletedT, exit 0" in capsys.readouterr().out

    def test_scenario_override(self, tmp_path: Path) -> None:
        ini_path = _write_ini(tmp_path, QUICK_RUN)
        code = harmonicflow.main(["--config", str(ini_path), "--scenario", "spiral"])
        assert code == harmonicflow.EXIT_CONFIG_ERROR

    def test_sweep_writes_under_sweep_directory(self, tmp_path: Path) -> None:
        ini_path = _write_ini(
            tmp_path,
            """
            [GENERAL]
            SCENARIO = "sweep"

            [FLOW]
            T = 0.02

            [GRID]
            N = 64

            [SOLVER]
            DT_INITIAL = 1e-3

            [SWEEP]
            SCENARIO = "stationary"
            AXIS = "k"
            VALUES = [1, 2]
            """,
        )
        harmonicflow.main(["--config", str(ini_path), "--out", str(tmp_path)])
        root = tmp_path / "sweep-stationary"
        assert (root / "sweep.json").is_file()
        assert (root / "k=1" / "report.json").is_file()
        assert (root / "k=2" / "report.json").is_file()
