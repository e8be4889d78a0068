"""Tests for utils/logger.py"""

from pathlib import Path
from unittest.mock import patch

import pytest

import utils.logger as logger_module
from utils.logger import Logger, configure_logger, get_logger


@pytest.fixture(autouse=True)
def reset_logger():
    """Reset global logger state around each test."""
    logger_module._logger = None
    yield
    logger_module._logger = None


class TestLogger:
    """Tests for the Logger class."""

    def test_init_default_values(self):
        """Debug is off and the file goes under ~/.synctrans/logs."""
        log = Logger()
        assert log.debug_enabled is False
        assert log.log_to_file is True
        assert log.log_dir == Logger.LOG_DIR
        assert log.log_dir.parts[-2:] == (".synctrans", "logs")

    def test_timestamp_format(self):
        """Timestamps read YYYY-MM-DD HH:MM:SS."""
        timestamp = Logger()._get_timestamp()
        assert len(timestamp) == 19
        assert timestamp[4] == timestamp[7] == '-'
        assert timestamp[13] == timestamp[16] == ':'

    @pytest.mark.parametrize("method", ["debug", "info", "warning"])
    def test_quiet_without_debug(self, capsys, method):
        """Only errors reach stderr when debug is off."""
        log = Logger(debug=False, log_to_file=False)
        getattr(log, method)("quiet")
        assert capsys.readouterr().err == ""

    @pytest.mark.parametrize("method,level", [
        ("debug", "DEBUG"),
        ("info", "INFO"),
        ("warning", "WARN"),
        ("error", "ERROR"),
    ])
    def test_levels_with_debug(self, capsys, method, level):
        """Every level is printed with its tag in debug mode."""
        log = Logger(debug=True, log_to_file=False)
        getattr(log, method)("loud")
        assert f"] [{level}] loud" in capsys.readouterr().err

    def test_error_always_printed(self, capsys):
        """Errors reach stderr without debug."""
        Logger(debug=False, log_to_file=False).error("bound exceeded")
        captured = capsys.readouterr()
        assert "[ERROR] bound exceeded" in captured.err
        assert captured.out == ""

    def test_write_to_log_dir(self, temp_dir):
        """Messages are appended to synctrans.log in the log directory."""
        log_dir = Path(temp_dir) / "nested" / "logs"
        log = Logger(log_dir=log_dir)
        log.info("first")
        log.warning("second")

        content = (log_dir / "synctrans.log").read_text().splitlines()
        assert content[0].endswith("[INFO] first")
        assert content[1].endswith("[WARN] second")

    def test_class_log_dir_used_by_default(self, temp_dir):
        """Without log_dir the class directory is used."""
        log_dir = Path(temp_dir) / "logs"
        with patch.object(Logger, 'LOG_DIR', log_dir):
            Logger().info("default dir")
        assert (log_dir / Logger.LOG_FILE).exists()

    def test_unwritable_dir_is_ignored(self, temp_dir, capsys):
        """A log directory that cannot be created does not raise."""
        blocker = Path(temp_dir) / "file"
        blocker.write_text("")
        log = Logger(debug=True, log_dir=blocker / "logs")
        log.info("should not fail")
        assert "[INFO] should not fail" in capsys.readouterr().err

    def test_log_to_file_disabled(self, temp_dir):
        """Nothing is written when file logging is off."""
        log_dir = Path(temp_dir) / "logs"
        Logger(log_to_file=False, log_dir=log_dir).error("not in file")
        assert not log_dir.exists()


class TestGetLogger:
    """Tests for the get_logger function."""

    def test_returns_same_instance(self):
        """The logger is shared."""
        assert get_logger() is get_logger()

    def test_upgrades_debug_setting(self):
        """Asking for debug turns it on for the shared logger."""
        log = get_logger(debug=False)
        assert log.debug_enabled is False
        assert get_logger(debug=True) is log
        assert log.debug_enabled is True

    def test_does_not_downgrade_debug(self):
        """Later callers without debug leave it on."""
        log = get_logger(debug=True)
        get_logger(debug=False)
        assert log.debug_enabled is True


class TestConfigureLogger:
    """Tests for configure_logger."""

    def test_applies_config(self, default_config, temp_dir):
        """debug, log_file and log_dir come from the config."""
        config = {**default_config, "debug": True, "log_file": True, "log_dir": temp_dir}
        log = configure_logger(config)
        assert log is get_logger()
        assert log.debug_enabled is True
        assert log.log_to_file is True
        assert log.log_dir == Path(temp_dir)

    def test_file_logging_off(self, default_config):
        """log_file false disables the file."""
        log = configure_logger(default_config)
        assert log.log_to_file is False
        assert log.debug_enabled is False

    def test_missing_log_dir_keeps_default(self):
        """A null log_dir keeps ~/.synctrans/logs."""
        log = configure_logger({"log_dir": None, "log_file": False})
        assert log.log_dir == Logger.LOG_DIR
