"""Process-wide logging for HarmonicFlow.

The entry script configures the ``HarmonicFlow`` namespace once: WARNING and above go to stderr
as bare messages, everything down to DEBUG goes to a rotating ``harmonicflow.log``. Scenario
runs additionally mirror their records into ``run.log`` inside the run directory, and spawned
sweep workers configure themselves through ``configure_worker``.
"""

from __future__ import annotations

import logging
import sys
import warnings
from contextlib import contextmanager
from logging import FileHandler, Formatter, NullHandler, StreamHandler
from logging.handlers import RotatingFileHandler
from typing import TYPE_CHECKING, Any, ClassVar, Final, Literal, NamedTuple, Self, TextIO

if TYPE_CHECKING:
    from collections.abc import Iterator
    from pathlib import Path

__all__: list[str] = ["RUN_LOG_NAME", "LoggerUtils"]

type LevelType = Literal[
    "NOTSET",
    "DEBUG",
    "INFO",
    "WARNING",
    "ERROR",
    "CRITICAL",
]

_LOG_FILE_SIZE: Final[int] = 4 * 1024 * 1024  # 4MB
_LOG_BACKUP_COUNT: Final[int] = 2

DEFAULT_LOG_LEVEL: Final[int] = logging.INFO
DEFAULT_NAMESPACE: Final[str] = "HarmonicFlow"
RUN_LOG_NAME: Final[str] = "run.log"

_FILE_FORMAT: Final[str] = "%(asctime)s %(levelname)-8s %(process)5d %(lineno)4d %(name)-40s\t%(funcName)s\t%(message)s"
# run.log is an artifact: no timestamps, no pids
_RUN_FORMAT: Final[str] = "%(levelname)-8s %(name)s: %(message)s"


class LogLevel(NamedTuple):
    """Logging level as both name and numeric value."""

    name: str
    value: int


class LoggerUtils:
    """Singleton owning the handlers of the namespace logger.

    Only the first construction in a process attaches handlers; later ones return the same
    instance untouched.

    Attributes:
        root_logger (logging.Logger): The namespace logger.
    """

    _logger_namespace: ClassVar[str] = DEFAULT_NAMESPACE
    _configured: ClassVar[bool] = False
    _instance: ClassVar[Self | None] = None

    def __new__(cls, *args: Any, **kwargs: Any) -> Self:
        _ = args, kwargs
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self, filename: str | Path, *, use_null_console: bool = False) -> None:
        """Attach console and file handlers to the namespace logger.

        Args:
            filename (str | Path): Absolute path of the rotating log file. Empty disables it.
            use_null_console (bool): Use a NullHandler instead of stderr output.
        """
        if LoggerUtils._configured:
            return

        self.root_logger: logging.Logger = logging.getLogger(self._logger_namespace)
        self._use_null_console: bool = bool(use_null_console) or sys.stderr is None
        filename = str(filename)
        # handler levels filter below this one, so the logger itself must stay permissive
        self.root_logger.setLevel(DEFAULT_LOG_LEVEL)

        self._console_logging()
        if filename.strip():
            self._file_logging(filename)

        warnings.showwarning = self.warning_to_log
        LoggerUtils._configured = True

    def warning_to_log(  # noqa: PLR0917
        self,
        message: Warning | str,
        category: type[Warning],
        filename: str,
        lineno: int,
        file: TextIO | None = None,
        line: str | None = None,
    ) -> None:
        """Route ``warnings.warn`` output (numpy RuntimeWarnings included) into the log."""
        _ = file, line
        self.root_logger.warning("%s:%d: %s: %s", filename, lineno, category.__name__, message)

    @classmethod
    def initialize(cls, namespace: str) -> None:
        """Set the logger namespace before the first configuration.

        Raises:
            RuntimeError: If the logger is already configured.
        """
        if cls._configured:
            msg = "LoggerUtils is already configured. Reinitialization is not allowed."
            raise RuntimeError(msg)

        cls._logger_namespace = namespace

    @classmethod
    def configure_worker(cls, level: int) -> None:
        """Pool initializer for spawned sweep workers.

        A spawned process starts with unconfigured logging. Workers keep stderr quiet, since the
        parent reports failed cells, and rely on each cell's ``run.log``.
        """
        cls(filename="", use_null_console=True)
        logging.getLogger(cls._logger_namespace).setLevel(level)

    @classmethod
    def current_level(cls) -> int:
        """Effective level of the namespace logger, for handing to worker processes."""
        return logging.getLogger(cls._logger_namespace).getEffectiveLevel()

    @classmethod
    @contextmanager
    def run_log(cls, directory: Path) -> Iterator[Path]:
        """Mirror namespace records into ``directory/run.log`` for the duration of the block.

        The file is truncated on entry. If the namespace logger has no level of its own (logging
        never configured in this process), INFO is used for the block.

        Yields:
            Path: The log file.
        """
        namespace_logger: logging.Logger = logging.getLogger(cls._logger_namespace)
        path: Path = directory / RUN_LOG_NAME
        handler: FileHandler = FileHandler(path, mode="w", encoding="utf-8")
        handler.setLevel(logging.DEBUG)
        handler.setFormatter(Formatter(_RUN_FORMAT))

        previous_level: int = namespace_logger.level
        if previous_level == logging.NOTSET:
            namespace_logger.setLevel(DEFAULT_LOG_LEVEL)
        namespace_logger.addHandler(handler)
        try:
            yield path
        finally:
            namespace_logger.removeHandler(handler)
            handler.close()
            namespace_logger.setLevel(previous_level)

    def _console_logging(self) -> None:
        if self._use_null_console:
            if not self._has_handler(NullHandler):
                self.root_logger.addHandler(NullHandler())
            return

        if self._has_handler(StreamHandler):
            self.root_logger.warning("Console logging is already configured.")
            return

        console_handler: StreamHandler[TextIO] = StreamHandler(sys.stderr)
        console_handler.setLevel(logging.WARNING)
        console_handler.setFormatter(Formatter("%(message)s"))
        self.root_logger.addHandler(console_handler)

    def _file_logging(self, filename: str) -> None:
        if self._has_handler(RotatingFileHandler):
            self.root_logger.warning("File logging is already configured.")
            return

        try:
            file_handler: RotatingFileHandler = RotatingFileHandler(
                filename=filename,
                maxBytes=_LOG_FILE_SIZE,
                backupCount=_LOG_BACKUP_COUNT,
                encoding="utf-8",
            )
        except (FileNotFoundError, PermissionError):
            self.root_logger.error("Cannot open log file %s; file logging disabled.", filename)
            return

        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(Formatter(_FILE_FORMAT))
        self.root_logger.addHandler(file_handler)

    def _has_handler(self, handler_type: type) -> bool:
        # FileHandler subclasses StreamHandler; run logs must not count as console output
        return any(
            isinstance(h, handler_type) and not (handler_type is StreamHandler and isinstance(h, FileHandler))
            for h in self.root_logger.handlers
        )

    def set_level(self, level: LevelType) -> None:
        """Set the namespace logger level; unknown names fall back to INFO with a warning."""
        level_map: dict[str, int] = logging.getLevelNamesMapping()
        try:
            self.root_logger.setLevel(level_map[level.upper()])
        except KeyError:
            self.root_logger.setLevel(DEFAULT_LOG_LEVEL)
            self.root_logger.warning("Unknown logging level '%s'; using INFO.", level)

    def get_level(self) -> LogLevel:
        level_value: int = self.root_logger.getEffectiveLevel()
        return LogLevel(name=logging.getLevelName(level_value), value=level_value)

    @staticmethod
    def get_logger(name: str | None = None) -> logging.Logger:
        """Return ``HarmonicFlow.<name>``, or the namespace logger itself for None."""
        if not LoggerUtils._logger_namespace:
            return logging.getLogger(name or None)
        return logging.getLogger(f"{LoggerUtils._logger_namespace}.{name}" if name else LoggerUtils._logger_namespace)
