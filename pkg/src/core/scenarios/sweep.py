"""Run one scenario across a parameter axis, one process per cell, and aggregate the reports."""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import replace
from typing import TYPE_CHECKING, Final

from _config import __report_schema_version__
from core.scenarios.base import ScenarioError
from core.scenarios.runner import run_scenario
from models.report_models import SweepCell, SweepReport
from utils.file_utils import FileUtilsError
from utils.logger_utils import LoggerUtils

if TYPE_CHECKING:
    import logging
    from pathlib import Path

    from handlers.artifact_writer import ArtifactWriter
    from models.config_models import Config

__all__: list[str] = ["SWEEP_AXES", "cell_config", "observed_order", "run_sweep"]

logger: logging.Logger = LoggerUtils.get_logger(__name__)

# axis -> (config section, key)
SWEEP_AXES: Final[dict[str, tuple[str, str]]] = {
    "k": ("FLOW", "K"),
    "alpha": ("BOUNDARY", "ALPHA"),
    "n": ("GRID", "N"),
    "slope": ("BOUNDARY", "SLOPE"),
    "gamma": ("GRID", "GAMMA"),
}
ERROR_EXIT: Final[int] = 2


def cell_config(template: Config, axis: str, value: float, directory: Path) -> Config:
    """Copy of ``template`` running the sweep scenario with ``axis`` set to ``value`` into ``directory``.

    Raises:
        ScenarioError: If the axis is unknown or an integer axis gets a fractional value.
    """
    if axis not in SWEEP_AXES:
        msg = f"Unknown sweep axis '{axis}'; choose one of {', '.join(SWEEP_AXES)}"
        raise ScenarioError(msg)
    section_name, key = SWEEP_AXES[axis]
    section = getattr(template, section_name)
    coerced: float | int = value
    if isinstance(getattr(section, key), int):
        if not float(value).is_integer():
            msg = f"Sweep axis '{axis}' takes integers, got {value}"
            raise ScenarioError(msg)
        coerced = int(value)
    general = replace(template.GENERAL, SCENARIO=template.SWEEP.SCENARIO, RUN_DIR=directory)
    return replace(template, GENERAL=general, **{section_name: replace(section, **{key: coerced})})


def _run_cell(config: Config, value: float) -> SweepCell:
    directory: str = str(config.GENERAL.RUN_DIR)
    try:
        result = run_scenario(config)
    except (ScenarioError, FileUtilsError, OSError, ValueError) as err:
        logger.error("Sweep cell %g failed: %s", value, err)  # noqa: TRY400
        return SweepCell(value=value, directory=directory, exit_code=ERROR_EXIT, error=str(err))
    return SweepCell(
        value=value,
        directory=directory,
        exit_code=result.exit_code,
        failed_checks=result.failed_checks,
        scalars=result.scalars,
    )


def observed_order(cells: list[SweepCell], key: str = "tau_sup") -> list[float]:
    """log(e_i / e_{i+1}) / log(N_{i+1} / N_i) for successive cells of an ``n`` sweep."""
    orders: list[float] = []
    for coarse, fine in zip(cells, cells[1:], strict=False):
        e_coarse: float | None = coarse.scalars.get(key)
        e_fine: float | None = fine.scalars.get(key)
        if not e_coarse or not e_fine or fine.value <= coarse.value:
            orders.append(math.nan)
            continue
        orders.append(math.log(e_coarse / e_fine) / math.log(fine.value / coarse.value))
    return orders


def run_sweep(config: Config, writer: ArtifactWriter) -> SweepReport:
    """Run SWEEP.SCENARIO for every SWEEP.VALUES entry; per-cell errors are recorded, not raised.

    Cells write into ``<axis>=<value>`` sub-directories of the writer. Up to GENERAL.JOBS cells run
    in parallel; the report lists cells in axis order either way.

    Raises:
        ScenarioError: If the sweep is empty, nests another sweep or names an unknown axis.
    """
    sweep = config.SWEEP
    if not sweep.VALUES:
        msg = "SWEEP.VALUES is empty"
        raise ScenarioError(msg)
    if sweep.SCENARIO == "sweep":
        msg = "A sweep cannot run another sweep"
        raise ScenarioError(msg)

    axis: str = sweep.AXIS.lower()
    values: list[float] = [float(value) for value in sweep.VALUES]
    jobs: list[tuple[Config, float]] = [
        (cell_config(config, axis, value, writer.child(f"{axis}={value:g}").directory), value) for value in values
    ]
    logger.info("Sweeping '%s' over %s=%s with %d job(s)", sweep.SCENARIO, axis, values, config.GENERAL.JOBS)

    cells: list[SweepCell]
    if config.GENERAL.JOBS > 1 and len(jobs) > 1:
        context = multiprocessing.get_context("spawn")
        workers: int = min(config.GENERAL.JOBS, len(jobs))
        with context.Pool(workers, LoggerUtils.configure_worker, (LoggerUtils.current_level(),)) as pool:
            cells = pool.starmap(_run_cell, jobs)
    else:
        cells = [_run_cell(cell, value) for cell, value in jobs]

    report = SweepReport(
        schema_version=__report_schema_version__,
        scenario=sweep.SCENARIO,
        axis=axis,
        cells=cells,
        observed_order=observed_order(cells) if axis == "n" else [],
        exit_code=0 if all(cell.exit_code == 0 for cell in cells) else 1,
    )
    writer.write_json("sweep.json", report)
    failed: list[float] = [cell.value for cell in cells if cell.exit_code != 0]
    if failed:
        logger.warning("Sweep cells failed at %s=%s", axis, failed)
    return report
