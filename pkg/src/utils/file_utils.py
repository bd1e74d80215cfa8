from __future__ import annotations

import os
from pathlib import Path

__all__: list[str] = [
    "FileUtils",
    "FileUtilsError",
    "OutputDirectoryError",
]


class FileUtils:
    """Path helpers for configuration files and per-run artifact directories.

    Methods:
    - resolve_path: Convert a user-input path to an absolute path safely.
    - prepare_output_dir: Create (if needed) and verify a writable run directory.
    """

    @staticmethod
    def resolve_path(path: str | Path, *, strict: bool = False) -> Path:
        """Convert a user-input path to an absolute path.

        Expands environment variables (e.g., $HOME), expands ``~`` and resolves relative paths
        against the current working directory.

        Args:
            path (str | Path): The input path (e.g., "~/runs/$SWEEP_ID").
            strict (bool): Raise if the path does not exist. Defaults to False.

        Returns:
            Path: The converted absolute path.
        """
        expanded: str = os.path.expandvars(str(path))
        user_expanded: Path = Path(expanded).expanduser()

        if user_expanded.is_absolute():
            return user_expanded.resolve(strict=strict)
        return (Path.cwd() / user_expanded).resolve(strict=strict)

    @staticmethod
    def prepare_output_dir(path: str | Path) -> Path:
        """Create a run directory and confirm that it is writable.

        Args:
            path (str | Path): Target directory; parents are created as needed.

        Returns:
            Path: The resolved directory.

        Raises:
            OutputDirectoryError: If the path exists as a file, cannot be created or is read-only.
        """
        directory: Path = FileUtils.resolve_path(path)
        if directory.exists() and not directory.is_dir():
            msg = f"Output path exists and is not a directory: {directory}"
            raise OutputDirectoryError(msg)
        try:
            directory.mkdir(parents=True, exist_ok=True)
        except OSError as err:
            msg = f"Cannot create output directory '{directory}': {err}"
            raise OutputDirectoryError(msg) from err
        if not os.access(directory, os.W_OK):
            msg = f"Output directory is not writable: {directory}"
            raise OutputDirectoryError(msg)
        return directory


class FileUtilsError(Exception):
    """Base exception for FileUtils errors."""


class OutputDirectoryError(FileUtilsError):
    """A run directory cannot be used for artifacts."""
