"""Configuration file loader and validator.

Handles reading, formatting, and validating settings from the INI configuration file.
Raises exceptions for any issues encountered during loading.
"""

from __future__ import annotations

import ast
import configparser
import os
from configparser import ConfigParser
from dataclasses import dataclass, fields
from pathlib import Path
from typing import TYPE_CHECKING, Any, Final, cast

from _config import __output_root_env__
from models.boundary_models import MODULATION_SHAPES, BoundaryKind
from models.config_models import Config
from utils.logger_utils import LoggerUtils

if TYPE_CHECKING:
    import logging
    from collections.abc import Callable, Collection
    from dataclasses import Field as DataclassField

    from _typeshed import DataclassInstance

__all__: list[str] = [
    "SCENARIO_NAMES",
    "SWEEP_AXIS_NAMES",
    "ConfigFileNotFoundError",
    "ConfigFormatError",
    "ConfigLoader",
    "ConfigLoaderError",
    "ConfigTypeError",
    "ConfigValueError",
]

logger: logging.Logger = LoggerUtils.get_logger(__name__)

SCENARIO_NAMES: Final[tuple[str, ...]] = (
    "stationary",
    "global-infinity",
    "finite-time-blowup",
    "comparison-demo",
    "chain-audit",
    "sweep",
)
SWEEP_AXIS_NAMES: Final[tuple[str, ...]] = ("k", "alpha", "n", "slope", "gamma")


@dataclass
class _NumericRule:
    """Numeric range validation rule; ``exclusive`` makes the lower bound strict."""

    name: str
    get_value: Callable[[], float]
    min_value: float
    max_value: float | None = None
    condition: Callable[[], bool] | None = None
    exclusive: bool = False


@dataclass
class _ChoiceRule:
    """Membership validation rule."""

    name: str
    get_value: Callable[[], object]
    choices: Collection[object]
    condition: Callable[[], bool] | None = None


class ConfigLoaderError(Exception):
    """An error occurred while processing the configuration file."""


class ConfigFileNotFoundError(ConfigLoaderError):
    """The specified configuration file does not exist."""


class ConfigFormatError(ConfigLoaderError):
    """The configuration file is not formatted correctly."""


class ConfigValueError(ConfigFormatError):
    """The configuration file contains an invalid value."""


class ConfigTypeError(ConfigFormatError):
    """The configuration file contains an invalid type."""


class ConfigLoader:
    """Handles loading and validation of configuration settings.

    This class reads the configuration file, applies formatting rules, applies command-line overrides
    and validates settings. It raises exceptions for any issues encountered during the loading process.

    Args:
        config_filename (str): INI file name to load.
        script_name (str): Executing script name, used in error messaging.
        **args: Optional overrides ``scenario``, ``out``, ``jobs``, ``seed`` and ``debug``; None means
            "keep the file value".

    Raises:
        ConfigFileNotFoundError: If the configuration file does not exist.
        ConfigFormatError: If the file cannot be parsed or contains invalid values/types.
    """

    def __init__(
        self,
        *,
        config_filename: str,
        script_name: str,
        **args: str | int | bool | None,
    ) -> None:
        config_path: Path = Path(config_filename)
        msg: str
        if not config_path.exists():
            msg = (
                f"Configuration file '{config_filename}' not found. "
                f"Please create '{config_filename}' in the same directory as '{script_name}'."
            )
            raise ConfigFileNotFoundError(msg)

        parser: ConfigParser = ConfigParser()

        try:
            parser.read(config_filename, encoding="utf-8")
        except configparser.Error as err:
            msg = f"Failed to parse configuration file '{config_filename}': {err}"
            raise ConfigFormatError(msg) from None

        self.config: Config = Config()
        self._convert_settings(parser)
        self._apply_overrides(args)
        self._validate_settings()

    def _convert_settings(self, parser: ConfigParser) -> None:
        """Convert configuration settings from the parser to the Config object.

        Raises:
            ConfigFormatError: If a value cannot be parsed or coerced to the expected type.
        """
        formatter: _ConfigFormatter = _ConfigFormatter(self.config, parser)
        for section in fields(cast("DataclassInstance", self.config)):
            self._convert_section_field(parser, formatter, section)

        known: set[str] = {section.name for section in fields(cast("DataclassInstance", self.config))}
        for name in parser.sections():
            if name not in known:
                logger.warning("Unknown section [%s] is ignored", name)

    def _convert_section_field(
        self, parser: ConfigParser, formatter: _ConfigFormatter, section: DataclassField[Any]
    ) -> None:
        """Convert all fields in a configuration section."""
        for key in fields(getattr(self.config, section.name)):
            try:
                parser[section.name][key.name]
            except KeyError:
                logger.debug("Skipping undefined setting: '%s.%s'", section.name, key.name)
                continue

            formatted_value = formatter.apply_format(section, key)
            setattr(getattr(self.config, section.name), key.name, formatted_value)

    def _apply_overrides(self, args: dict[str, str | int | bool | None]) -> None:
        """Apply command-line overrides, then fill an empty OUTPUT_DIR from the environment."""
        general = self.config.GENERAL
        if args.get("scenario") is not None:
            general.SCENARIO = str(args["scenario"])
        if args.get("out") is not None:
            general.OUTPUT_DIR = str(args["out"])
        if args.get("jobs") is not None:
            general.JOBS = int(cast("int", args["jobs"]))
        if args.get("seed") is not None:
            general.SEED = int(cast("int", args["seed"]))
        if args.get("debug", False):
            general.DEBUG = True
        if not general.OUTPUT_DIR:
            general.OUTPUT_DIR = os.environ.get(__output_root_env__, "")
            if general.OUTPUT_DIR:
                logger.debug("Output root taken from %s: %s", __output_root_env__, general.OUTPUT_DIR)

    def _validate_settings(self) -> None:
        """Validate choices, numeric ranges and cross-field constraints.

        Raises:
            ConfigFormatError: If validation fails for any setting.
        """
        self._validate_lists()
        for rule in self._build_validation_rules():
            if rule.condition is not None and not rule.condition():
                continue
            self._apply_rule(rule)
        self._validate_cross_fields()

    def _validate_lists(self) -> None:
        """SWEEP.VALUES holds numbers and BOUNDARY.SAMPLES holds [radius, value] pairs."""
        values: Any = self.config.SWEEP.VALUES
        if not isinstance(values, list) or any(
            isinstance(v, bool) or not isinstance(v, int | float) for v in values
        ):
            msg = f"'SWEEP.VALUES' must be a list of numbers, got {values!r}"
            raise ConfigTypeError(msg)
        samples: Any = self.config.BOUNDARY.SAMPLES
        if not isinstance(samples, list) or any(
            not isinstance(pair, list | tuple) or len(pair) != 2  # noqa: PLR2004
            for pair in samples
        ):
            msg = f"'BOUNDARY.SAMPLES' must be a list of [radius, value] pairs, got {samples!r}"
            raise ConfigTypeError(msg)

    def _build_validation_rules(self) -> list[_NumericRule | _ChoiceRule]:
        """Build the declarative validation rule list."""
        general = self.config.GENERAL
        flow = self.config.FLOW
        grid = self.config.GRID
        boundary = self.config.BOUNDARY
        solver = self.config.SOLVER
        checks = self.config.CHECKS
        sweep = self.config.SWEEP

        def is_sweep() -> bool:
            return general.SCENARIO == "sweep"

        return [
            # GENERAL
            _ChoiceRule("GENERAL.SCENARIO", lambda: general.SCENARIO, SCENARIO_NAMES),
            _NumericRule("GENERAL.SEED", lambda: general.SEED, 0),
            _NumericRule("GENERAL.JOBS", lambda: general.JOBS, 1),
            # FLOW
            _NumericRule("FLOW.K", lambda: flow.K, 1),
            _NumericRule("FLOW.T", lambda: flow.T, 0.0, exclusive=True),
            _NumericRule("FLOW.BOUND_MULTIPLE", lambda: flow.BOUND_MULTIPLE, 1),
            # GRID
            _NumericRule("GRID.N", lambda: grid.N, 16),
            _NumericRule("GRID.GAMMA", lambda: grid.GAMMA, 0.0),
            # BOUNDARY
            _ChoiceRule("BOUNDARY.KIND", lambda: boundary.KIND, tuple(BoundaryKind.registered)),
            _ChoiceRule("BOUNDARY.MODULATION", lambda: boundary.MODULATION, MODULATION_SHAPES),
            _ChoiceRule("BOUNDARY.SIGN", lambda: boundary.SIGN, (-1, 1)),
            _NumericRule("BOUNDARY.ALPHA", lambda: boundary.ALPHA, 0.0, exclusive=True),
            _NumericRule("BOUNDARY.MODULATION_FREQUENCY", lambda: boundary.MODULATION_FREQUENCY, 0.0),
            # SOLVER
            _NumericRule("SOLVER.DT_INITIAL", lambda: solver.DT_INITIAL, 0.0, exclusive=True),
            _NumericRule("SOLVER.DT_MIN", lambda: solver.DT_MIN, 0.0, exclusive=True),
            _NumericRule("SOLVER.DT_MAX", lambda: solver.DT_MAX, 0.0, exclusive=True),
            _NumericRule("SOLVER.NEWTON_TOL", lambda: solver.NEWTON_TOL, 0.0, exclusive=True),
            _NumericRule("SOLVER.NEWTON_MAX_ITER", lambda: solver.NEWTON_MAX_ITER, 1),
            _NumericRule("SOLVER.DT_GROWTH", lambda: solver.DT_GROWTH, 1.0),
            _NumericRule("SOLVER.MAX_STEP_CHANGE", lambda: solver.MAX_STEP_CHANGE, 0.0, exclusive=True),
            _NumericRule("SOLVER.SNAPSHOT_EVERY", lambda: solver.SNAPSHOT_EVERY, 1),
            _NumericRule("SOLVER.SNAPSHOT_LIMIT", lambda: solver.SNAPSHOT_LIMIT, 2),
            # CHECKS
            _NumericRule("CHECKS.TOL_BAND", lambda: checks.TOL_BAND, 0.0),
            _NumericRule("CHECKS.G_MAX", lambda: checks.G_MAX, 0.0, exclusive=True),
            _NumericRule("CHECKS.TAU_SHIFT", lambda: checks.TAU_SHIFT, 0.0, exclusive=True),
            _NumericRule("CHECKS.TOL_FACTOR", lambda: checks.TOL_FACTOR, 0.0),
            _NumericRule("CHECKS.BUFFER_SIZE", lambda: checks.BUFFER_SIZE, 2),
            _NumericRule("CHECKS.MIN_SCALE_GRADIENT", lambda: checks.MIN_SCALE_GRADIENT, 0.0),
            _NumericRule("CHECKS.FALLBACK_SLOPE", lambda: checks.FALLBACK_SLOPE, 0.0, exclusive=True),
            _NumericRule("CHECKS.CHAIN_ALPHA", lambda: checks.CHAIN_ALPHA, 0.0, exclusive=True),
            _NumericRule("CHECKS.CHAIN_EVERY", lambda: checks.CHAIN_EVERY, 1),
            _NumericRule("CHECKS.DRIFT_TOL", lambda: checks.DRIFT_TOL, 0.0),
            _NumericRule("CHECKS.LIMSUP_REACH", lambda: checks.LIMSUP_REACH, 0.0, 1.0, exclusive=True),
            # SWEEP (sweep runs only)
            _ChoiceRule("SWEEP.SCENARIO", lambda: sweep.SCENARIO, SCENARIO_NAMES[:-1], condition=is_sweep),
            _ChoiceRule("SWEEP.AXIS", lambda: sweep.AXIS.lower(), SWEEP_AXIS_NAMES, condition=is_sweep),
        ]

    def _apply_rule(self, rule: _NumericRule | _ChoiceRule) -> None:
        """Apply a single validation rule."""
        if isinstance(rule, _ChoiceRule):
            choice: object = rule.get_value()
            if choice not in rule.choices:
                allowed: str = ", ".join(map(str, rule.choices))
                msg = f"Unsupported value for '{rule.name}': {choice!r} (choose from {allowed})"
                raise ConfigValueError(msg)
            return
        value: float = rule.get_value()
        if rule.exclusive and value <= rule.min_value:
            msg = f"'{rule.name}' must be greater than {rule.min_value}."
            raise ConfigValueError(msg)
        if value < rule.min_value:
            msg = f"'{rule.name}' must be greater than or equal to {rule.min_value}."
            raise ConfigValueError(msg)
        if rule.max_value is not None and value > rule.max_value:
            msg = f"'{rule.name}' must be less than or equal to {rule.max_value}."
            raise ConfigValueError(msg)

    def _validate_cross_fields(self) -> None:
        """DT_MIN <= DT_INITIAL <= DT_MAX, and a sweep needs values."""
        solver = self.config.SOLVER
        if solver.DT_MIN > solver.DT_MAX:
            msg = "'SOLVER.DT_MIN' must be less than or equal to 'SOLVER.DT_MAX'."
            raise ConfigValueError(msg)
        if not solver.DT_MIN <= solver.DT_INITIAL <= solver.DT_MAX:
            logger.warning(
                "'SOLVER.DT_INITIAL' %g lies outside [%g, %g] and will be clamped",
                solver.DT_INITIAL,
                solver.DT_MIN,
                solver.DT_MAX,
            )
        if self.config.GENERAL.SCENARIO == "sweep" and not self.config.SWEEP.VALUES:
            msg = "'SWEEP.VALUES' must not be empty when GENERAL.SCENARIO is 'sweep'."
            raise ConfigValueError(msg)


class _ConfigFormatter:
    """Converts INI string values to typed Python objects (bool, int, float, str, list)."""

    def __init__(self, config: Config, parser: ConfigParser) -> None:
        self.config: Config = config
        self.parser: ConfigParser = parser

    def apply_format(self, section: DataclassField[Any], key: DataclassField[Any]) -> Any:
        """Convert INI value to the expected Python type based on the Config field type.

        Returns:
            Any: Parsed value coerced to the type declared in the config dataclass.

        Raises:
            ConfigValueError: If a value cannot be coerced to the expected type.
            ConfigFormatError: If literal evaluation fails due to invalid syntax.
            ConfigTypeError: If an unexpected type is encountered during coercion.
        """
        formatters: dict[
            type[bool | int | float], Callable[[DataclassField[Any], DataclassField[Any]], bool | int | float]
        ] = {
            bool: self.parse_as_boolean,
            int: self.parse_as_integer,
            float: self.parse_as_float,
        }

        formatter: Callable[[DataclassField[Any], DataclassField[Any]], bool | int | float] | None = formatters.get(
            type(getattr(getattr(self.config, section.name), key.name))
        )
        if formatter:
            try:
                return formatter(section, key)
            except ValueError as err:
                msg = f"Invalid value for {section.name}.{key.name}: {err}"
                raise ConfigValueError(msg) from err
            except TypeError as err:
                msg = f"Invalid value for {section.name}.{key.name}: {err}"
                raise ConfigTypeError(msg) from err

        value_str: str = self.parser[section.name][key.name]
        try:
            return ast.literal_eval(value_str)
        except ValueError as err:
            msg = f"Invalid literal for {section.name}.{key.name}: {value_str}"
            raise ConfigValueError(msg) from err
        except SyntaxError as err:
            msg = f"Invalid literal for {section.name}.{key.name}: {value_str}"
            raise ConfigFormatError(msg) from err

    def parse_as_float(self, section: DataclassField[Any], key: DataclassField[Any]) -> float:
        """Convert INI string to float."""
        value: str = self.parser.get(section.name, key.name)
        for char in ("'", '"'):
            value = value.removeprefix(char).removesuffix(char)
        return float(value)

    def parse_as_integer(self, section: DataclassField[Any], key: DataclassField[Any]) -> int:
        """Convert INI string to integer; fractional values are rejected."""
        value: str = self.parser.get(section.name, key.name)
        for char in ("'", '"'):
            value = value.removeprefix(char).removesuffix(char)
        number: float = float(value)
        if not number.is_integer():
            msg = f"expected an integer, got {value}"
            raise ValueError(msg)
        return int(number)

    def parse_as_boolean(self, section: DataclassField[Any], key: DataclassField[Any]) -> bool:
        """Convert INI string to boolean."""
        return self.parser.getboolean(section.name, key.name)
