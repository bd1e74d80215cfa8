"""Per-run artifact files: snapshot and series CSVs, event logs, JSON reports and a text summary.

Layout of a snapshot CSV: the first row is ``time`` followed by the node radii, every further row is
a snapshot time followed by the values at those radii. Floats are written with 17 significant digits
so identical runs produce identical files. JSON artifacts are strict: NaN and infinities become null.
"""

from __future__ import annotations

import csv
import json
import math
from typing import TYPE_CHECKING, Any, Final

from utils.file_utils import FileUtils
from utils.logger_utils import LoggerUtils

if TYPE_CHECKING:
    import logging
    from collections.abc import Iterable, Mapping, Sequence
    from pathlib import Path

    from dataclasses_json import DataClassJsonMixin

    from models.flow_models import EventRecord, Profile
    from models.report_models import EnergyLedger, ScenarioResult

__all__: list[str] = ["ArtifactWriter", "format_float"]

logger: logging.Logger = LoggerUtils.get_logger(__name__)

ENCODING: Final[str] = "utf-8"


def format_float(value: float) -> str:
    return format(value, ".17g")


def _payload(report: Any) -> Any:
    if hasattr(report, "to_dict"):
        return _payload(report.to_dict())
    if isinstance(report, float) and not math.isfinite(report):
        return None
    if isinstance(report, dict):
        return {key: _payload(value) for key, value in report.items()}
    if isinstance(report, list | tuple):
        return [_payload(item) for item in report]
    return report


class ArtifactWriter:
    """Owns one run directory and writes every artifact of a scenario into it.

    Attributes:
        directory (Path): The run directory, created on construction.
        written (list[Path]): Files written so far, in order.
    """

    def __init__(self, directory: str | Path) -> None:
        self.directory: Path = FileUtils.prepare_output_dir(directory)
        self.written: list[Path] = []

    def child(self, name: str) -> ArtifactWriter:
        """Writer for a sub-directory (sweep cells, refinement levels)."""
        return ArtifactWriter(self.directory / name)

    def _path(self, name: str) -> Path:
        path: Path = self.directory / name
        self.written.append(path)
        logger.debug("Writing %s", path)
        return path

    def write_snapshots(self, name: str, snapshots: Sequence[Profile]) -> Path:
        path: Path = self._path(name)
        with path.open("w", encoding=ENCODING, newline="") as stream:
            writer = csv.writer(stream, lineterminator="\n")
            if snapshots:
                writer.writerow(["time", *(format_float(r) for r in snapshots[0].nodes)])
            for profile in snapshots:
                writer.writerow([format_float(profile.time), *(format_float(v) for v in profile.values)])
        return path

    def write_series(self, name: str, rows: Iterable[Mapping[str, Any]], fieldnames: Sequence[str]) -> Path:
        """Write dict rows as CSV; float cells use the fixed 17-digit format."""
        path: Path = self._path(name)
        with path.open("w", encoding=ENCODING, newline="") as stream:
            writer = csv.DictWriter(stream, fieldnames=list(fieldnames), lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({key: format_float(v) if isinstance(v, float) else v for key, v in row.items()})
        return path

    def write_energy(self, name: str, ledger: EnergyLedger) -> Path:
        fieldnames: list[str] = ["time", "interval", "energy", "flux", "dissipation", "rate", "residual"]
        rows: list[dict[str, Any]] = [{"time": ledger.initial_time, "energy": ledger.initial_energy}]
        rows.extend(sample.to_dict() for sample in ledger.samples)
        return self.write_series(name, rows, fieldnames)

    def write_events(self, name: str, events: Iterable[EventRecord]) -> Path:
        path: Path = self._path(name)
        with path.open("w", encoding=ENCODING, newline="\n") as stream:
            for event in events:
                stream.write(json.dumps(_payload(event), sort_keys=True, allow_nan=False) + "\n")
        return path

    def write_json(self, name: str, report: DataClassJsonMixin | Mapping[str, Any] | Sequence[Any]) -> Path:
        path: Path = self._path(name)
        text: str = json.dumps(_payload(report), indent=2, sort_keys=True, default=str, allow_nan=False)
        path.write_text(text + "\n", encoding=ENCODING)
        return path

    def write_summary(self, result: ScenarioResult, name: str = "summary.txt") -> Path:
        """Human-readable digest of a scenario result."""
        lines: list[str] = [
            f"scenario: {result.scenario}",
            f"status:   {result.status}",
            f"exit:     {result.exit_code}",
            "",
            "checks:",
        ]
        width: int = max((len(check.name) for check in result.checks), default=0)
        for check in result.checks:
            mark: str = "SKIP" if not check.applicable else "PASS" if check.passed else "FAIL"
            value: str = "" if check.value is None else f" value={check.value:.6g}"
            detail: str = f" ({check.detail})" if check.detail else ""
            lines.append(f"  [{mark}] {check.name:<{width}}{value}{detail}")
        if result.scalars:
            lines.extend(["", "scalars:"])
            lines.extend(f"  {key} = {result.scalars[key]:.9g}" for key in sorted(result.scalars))
        path: Path = self._path(name)
        path.write_text("\n".join(lines) + "\n", encoding=ENCODING)
        return path
