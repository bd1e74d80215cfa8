"""HarmonicFlow: numerical lab for the k-equivariant harmonic map heat flow on the unit disk.

This module is the command-line entry point. It loads the INI configuration, applies
command-line overrides, and runs either one canonical scenario or a parameter sweep.
Exit status is 0 iff every enabled check passed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import TYPE_CHECKING, Final, NoReturn, override

from _config import __config_file__, __log_file__, __version__
from config.loader import ConfigLoader, ConfigLoaderError
from core.scenarios.base import ScenarioBase, ScenarioError
from core.scenarios.runner import run_scenario
from core.scenarios.sweep import run_sweep
from handlers.artifact_writer import ArtifactWriter
from utils.file_utils import FileUtils, FileUtilsError
from utils.logger_utils import LoggerUtils

if TYPE_CHECKING:
    import logging

    from models.config_models import Config

CFG_FILE: Final[str] = __config_file__
LOG_FILE: Final[str] = __log_file__

EXIT_CONFIG_ERROR: Final[int] = 3
EXIT_SCENARIO_ERROR: Final[int] = 4
EXIT_IO_ERROR: Final[int] = 5

logger: logging.Logger = LoggerUtils.get_logger(__name__)


def check_python_version() -> None:
    if sys.version_info < (3, 12):
        msg = "Python 3.12 or later is required"
        raise RuntimeError(msg)


class _ArgumentParser(argparse.ArgumentParser):
    @override
    def error(self, message: str) -> NoReturn:
        print(f"\n{message}\n", file=sys.stderr)
        self.print_help(sys.stderr)
        raise SystemExit(2)


def parse_arguments(argv: list[str] | None = None) -> argparse.Namespace:
    """Parse command-line arguments; every override defaults to the configuration file value."""
    parser: _ArgumentParser = _ArgumentParser(prog="harmonicflow", description=__doc__.splitlines()[0])
    parser.add_argument("--config", dest="config", metavar="PATH", default=CFG_FILE, help="Configuration file")
    parser.add_argument("--scenario", dest="scenario", metavar="NAME", help="Override GENERAL.SCENARIO")
    parser.add_argument("--out", dest="out", metavar="DIR", help="Override GENERAL.OUTPUT_DIR")
    parser.add_argument("--jobs", dest="jobs", metavar="COUNT", type=int, help="Parallel sweep cells")
    parser.add_argument("--seed", dest="seed", metavar="INT", type=int, help="Seed of randomized suites")
    parser.add_argument("-d", "--debug", action="store_true", help="Enable debug mode")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser.parse_args(argv)


def load_config(args: argparse.Namespace) -> Config:
    """Load the configuration file with command-line overrides."""
    script_name: str = Path(sys.argv[0]).stem
    overrides: dict[str, str | int | bool | None] = {
        "scenario": args.scenario,
        "out": args.out,
        "jobs": args.jobs,
        "seed": args.seed,
        "debug": args.debug,
    }
    cfg: Config = ConfigLoader(config_filename=args.config, script_name=script_name, **overrides).config
    cfg.GENERAL.SCRIPT_NAME = script_name
    cfg.GENERAL.VERSION = str(__version__)
    return cfg


def configure_logging(log_setup: LoggerUtils, config: Config) -> None:
    """Configure logging level from configuration."""
    if config.GENERAL.DEBUG:
        log_setup.set_level("DEBUG")
        logger.warning("Running in debug mode; every rejected step is logged.")


def run(config: Config) -> int:
    """Run the configured scenario or sweep and return the exit status."""
    if config.GENERAL.SCENARIO == "sweep":
        root: Path = Path(config.GENERAL.OUTPUT_DIR or "runs") / f"sweep-{config.SWEEP.SCENARIO}"
        report = run_sweep(config, ArtifactWriter(root))
        print(f"sweep {report.scenario} over {report.axis}: exit {report.exit_code} ({root})")
        return report.exit_code
    result = run_scenario(config)
    print(f"{result.scenario}: {result.status}, exit {result.exit_code} ({ScenarioBase.run_dir(config)})")
    return result.exit_code


def main(argv: list[str] | None = None) -> int:
    """Main entry point.

    Startup sequence:
    1. Check Python version
    2. Parse command-line arguments
    3. Initialize logging
    4. Load configuration
    5. Run the scenario or sweep
    """
    check_python_version()
    args: argparse.Namespace = parse_arguments(argv)
    log_setup = LoggerUtils(filename=FileUtils.resolve_path(LOG_FILE))
    logger.info("Process started")

    try:
        config: Config = load_config(args)
        configure_logging(log_setup, config)
        logger.info("Configuration loaded from '%s'", args.config)
        return run(config)
    except ConfigLoaderError as err:
        logger.error("An error occurred in ConfigLoader: '%s'", err)  # noqa: TRY400
        return EXIT_CONFIG_ERROR
    except ScenarioError as err:
        logger.error("Scenario setup failed: %s", err)  # noqa: TRY400
        return EXIT_SCENARIO_ERROR
    except (FileUtilsError, OSError) as err:
        logger.critical(err)
        return EXIT_IO_ERROR
    finally:
        logger.info("Process finished")


if __name__ == "__main__":
    sys.exit(main())
