"""Run one scenario into its directory and seal the report."""

from __future__ import annotations

import dataclasses
from typing import TYPE_CHECKING

from _config import __report_schema_version__
from core.scenarios.base import RunConfig, ScenarioBase, ScenarioError
from handlers.artifact_writer import ArtifactWriter
from models.report_models import ScenarioResult
from utils.logger_utils import LoggerUtils

if TYPE_CHECKING:
    import logging

    from models.config_models import Config

__all__: list[str] = ["run_scenario", "scenario_names"]

logger: logging.Logger = LoggerUtils.get_logger(__name__)


def scenario_names() -> list[str]:
    return sorted(ScenarioBase.scenario_registry)


def run_scenario(config: Config, writer: ArtifactWriter | None = None) -> ScenarioResult:
    """Execute the configured scenario and write config.json, report.json and summary.txt.

    Raises:
        ScenarioError: If the scenario is unknown or cannot be set up.
        OutputDirectoryError: If the run directory is not writable.
    """
    name: str = config.GENERAL.SCENARIO
    scenario_class: type[ScenarioBase] | None = ScenarioBase.scenario_registry.get(name)
    if scenario_class is None:
        msg = f"Unknown scenario '{name}'; choose one of {', '.join(scenario_names())} or run a sweep"
        raise ScenarioError(msg)

    settings: RunConfig = RunConfig.from_config(config)
    writer = writer or ArtifactWriter(ScenarioBase.run_dir(config))
    with LoggerUtils.run_log(writer.directory):
        writer.write_json("config.json", dataclasses.asdict(config))
        logger.info("Running scenario '%s' into %s", name, writer.directory)

        result = ScenarioResult(schema_version=__report_schema_version__, scenario=name, status="n/a")
        result.status = scenario_class(settings, writer).execute(result)
        result.seal()

        writer.write_json("report.json", result)
        writer.write_summary(result)
        skipped: list[str] = result.skipped_checks
        if skipped:
            logger.info("Scenario '%s': %d check(s) inapplicable: %s", name, len(skipped), ", ".join(skipped))
        failed: list[str] = result.failed_checks
        if failed:
            logger.warning("Scenario '%s' failed %d check(s): %s", name, len(failed), ", ".join(failed))
        else:
            logger.info("Scenario '%s' passed all %d applicable checks", name, len(result.checks) - len(skipped))
    return result
