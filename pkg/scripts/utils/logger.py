"""Logging for synctrans: stderr plus an append-only log file."""

import sys
from datetime import datetime
from pathlib import Path
from typing import Any


class Logger:
    """Writes `[time] [LEVEL] message` lines to stderr and optionally to a file."""

    LOG_DIR = Path.home() / ".synctrans" / "logs"
    LOG_FILE = "synctrans.log"

    def __init__(self, debug: bool = False, log_to_file: bool = True,
                 log_dir: Path | None = None):
        self.debug_enabled = debug
        self.log_to_file = log_to_file
        self.log_dir = log_dir or self.LOG_DIR

    def _get_timestamp(self) -> str:
        return datetime.now().strftime("%Y-%m-%d %H:%M:%S")

    def _write(self, level: str, message: str) -> None:
        """Write log message to stderr and optionally to file."""
        formatted = f"[{self._get_timestamp()}] [{level}] {message}"

        # Errors always reach stderr
        if level == "ERROR" or self.debug_enabled:
            print(formatted, file=sys.stderr)

        if self.log_to_file:
            try:
                self.log_dir.mkdir(parents=True, exist_ok=True)
                with open(self.log_dir / self.LOG_FILE, 'a') as f:
                    f.write(formatted + "\n")
            except OSError:
                pass

    def debug(self, message: str) -> None:
        """Log debug message (only if debug is enabled)."""
        if self.debug_enabled:
            self._write("DEBUG", message)

    def info(self, message: str) -> None:
        self._write("INFO", message)

    def warning(self, message: str) -> None:
        self._write("WARN", message)

    def error(self, message: str) -> None:
        self._write("ERROR", message)


# Global logger instance, shared by every module that imports get_logger
_logger: Logger | None = None


def get_logger(debug: bool = False) -> Logger:
    """Get or create the global logger instance."""
    global _logger
    if _logger is None:
        _logger = Logger(debug=debug)
    elif debug and not _logger.debug_enabled:
        _logger.debug_enabled = True
    return _logger


def configure_logger(config: dict[str, Any]) -> Logger:
    """Apply `debug`, `log_file` and `log_dir` from the loaded configuration."""
    logger = get_logger(bool(config.get("debug", False)))
    logger.log_to_file = bool(config.get("log_file", True))
    if config.get("log_dir"):
        logger.log_dir = Path(config["log_dir"]).expanduser()
    return logger
