from __future__ import annotations

import csv
import json
from typing import TYPE_CHECKING

import numpy as np
import pytest

from core.grid.radial_grid import build_graded_grid
from handlers.artifact_writer import ArtifactWriter, format_float
from models.flow_models import EventRecord, Profile
from models.report_models import CheckResult, EnergyLedger, EnergySample, ScenarioResult, Verdict
from utils.file_utils import OutputDirectoryError

if TYPE_CHECKING:
    from pathlib import Path


def _profiles() -> list[Profile]:
    grid = build_graded_grid(16, 2.0)
    return [Profile(grid=grid, values=t * grid.nodes, time=t, k=1) for t in (0.0, 0.5, 1.0)]


def test_format_float_round_trips() -> None:
    value = 0.1 + 0.2
    assert float(format_float(value)) == value
    assert format_float(1.0) == "1"


def test_directory_is_created(tmp_path: Path) -> None:
    writer = ArtifactWriter(tmp_path / "a" / "b")
    assert writer.directory.is_dir()
    assert writer.child("k=2").directory == writer.directory / "k=2"


def test_file_in_place_of_directory(tmp_path: Path) -> None:
    blocker = tmp_path / "taken"
    blocker.write_text("x", encoding="utf-8")
    with pytest.raises(OutputDirectoryError):
        ArtifactWriter(blocker)


def test_snapshot_layout(tmp_path: Path) -> None:
    writer = ArtifactWriter(tmp_path)
    profiles = _profiles()
    path = writer.write_snapshots("snapshots.csv", profiles)
    rows = list(csv.reader(path.open(encoding="utf-8")))
    assert rows[0][0] == "time"
    assert len(rows[0]) == profiles[0].grid.size + 1
    assert [float(row[0]) for row in rows[1:]] == [0.0, 0.5, 1.0]
    assert np.allclose([float(v) for v in rows[-1][1:]], profiles[-1].values, rtol=0.0, atol=0.0)
    assert writer.written == [path]


def test_empty_snapshot_file(tmp_path: Path) -> None:
    path = ArtifactWriter(tmp_path).write_snapshots("empty.csv", [])
    assert path.read_text(encoding="utf-8") == ""


def test_energy_rows(tmp_path: Path) -> None:
    ledger = EnergyLedger(
        initial_time=0.0,
        initial_energy=6.0,
        samples=[EnergySample(time=0.1, interval=0.1, energy=5.5, flux=0.0, dissipation=5.0, rate=-5.0, residual=0.0)],
    )
    path = ArtifactWriter(tmp_path).write_energy("energy.csv", ledger)
    rows = list(csv.DictReader(path.open(encoding="utf-8")))
    assert [row["energy"] for row in rows] == ["6", "5.5"]
    assert rows[0]["interval"] == ""
    assert rows[1]["dissipation"] == "5"


def test_events_are_json_lines(tmp_path: Path) -> None:
    events = [EventRecord(time=0.5, event="step_failure", detail={"dt": 1e-3}), EventRecord(time=1.0, event="halt")]
    path = ArtifactWriter(tmp_path).write_events("events.jsonl", events)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert [json.loads(line)["event"] for line in lines] == ["step_failure", "halt"]


def test_json_nests_reports(tmp_path: Path) -> None:
    checks = [CheckResult(name="a", passed=True), CheckResult(name="b", passed=False, value=1.5)]
    path = ArtifactWriter(tmp_path).write_json("checks.json", {"checks": checks, "pair": (checks[0], 2)})
    payload = json.loads(path.read_text(encoding="utf-8"))
    assert payload["checks"][1] == {"name": "b", "passed": False, "value": 1.5, "detail": "", "applicable": True}
    assert payload["pair"][0]["name"] == "a"
    assert payload["pair"][1] == 2


def test_summary_marks_checks(tmp_path: Path) -> None:
    result = ScenarioResult(schema_version=1, scenario="stationary", status="CompletedT")
    result.add("drift", passed=True, value=1e-5)
    result.add("energy_non_increasing", passed=False, detail="rose")
    result.add_verdict("self_comparison", Verdict.INAPPLICABLE)
    result.scalars["steps"] = 12.0
    result.seal()
    text = ArtifactWriter(tmp_path).write_summary(result).read_text(encoding="utf-8")
    assert "exit:     1" in text
    assert "[PASS] drift" in text
    assert "[FAIL] energy_non_increasing" in text
    assert "[SKIP] self_comparison" in text
    assert "(rose)" in text
    assert "steps = 12" in text


def test_non_finite_values_become_null(tmp_path: Path) -> None:
    writer = ArtifactWriter(tmp_path)
    report = {
        "deviation": float("nan"),
        "orders": [np.inf, 2.0],
        "check": CheckResult(name="x", passed=False, value=-np.inf),
    }
    text = writer.write_json("report.json", report).read_text(encoding="utf-8")
    assert "NaN" not in text
    assert "Infinity" not in text
    payload = json.loads(text)
    assert payload["deviation"] is None
    assert payload["orders"] == [None, 2.0]
    assert payload["check"]["value"] is None

    events = [EventRecord(time=0.5, event="step_failure", detail={"dt": 1e-13, "residual": float("inf")})]
    line = writer.write_events("events.jsonl", events).read_text(encoding="utf-8")
    assert json.loads(line)["detail"] == {"dt": 1e-13, "residual": None}
