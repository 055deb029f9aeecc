"""Tests for the application bootstrap.

This module covers configuration loading and logging setup.
"""

import logging
import tempfile
from pathlib import Path
from unittest.mock import MagicMock, patch

import pytest

from latred.app.bootstrap import load_configuration, setup_logging
from latred.infrastructure.config import AppConfig, ConfigurationError


class TestLoadConfiguration:
    """Test suite for configuration loading."""

    def test_load_explicit_file(self) -> None:
        """Test that an explicit file is read."""
        with tempfile.TemporaryDirectory() as temp_dir:
            config_file = Path(temp_dir) / "config.toml"
            config_file.write_text("[simulation]\ntrials = 12\n")

            config = load_configuration(str(config_file))

        assert config.simulation.trials == 12
        assert config.config_file == str(config_file)

    def test_missing_explicit_file(self) -> None:
        """Test that a missing explicit file is an error."""
        with pytest.raises(ConfigurationError):
            load_configuration("/nonexistent/latred/config.toml")


class TestLoggingSetup:
    """Test suite for logging setup functionality."""

    def test_logging_setup_console_only(self) -> None:
        """Test logging setup with console only."""
        config = AppConfig()
        config.logging.console_enabled = True
        config.logging.file_path = None
        config.logging.level = "INFO"

        with patch("logging.getLogger") as mock_get_logger:
            mock_logger = MagicMock()
            mock_get_logger.return_value = mock_logger

            setup_logging(config)

            mock_logger.setLevel.assert_called_once_with(logging.INFO)
            mock_logger.handlers.clear.assert_called_once()
            assert mock_logger.addHandler.call_count == 1

    def test_logging_level_override(self) -> None:
        """Test that an explicit level wins over the configured one."""
        config = AppConfig()
        config.logging.level = "ERROR"

        with patch("logging.getLogger") as mock_get_logger:
            mock_logger = MagicMock()
            mock_get_logger.return_value = mock_logger

            setup_logging(config, "debug")

            mock_logger.setLevel.assert_called_once_with(logging.DEBUG)

    def test_logging_setup_file_and_console(self) -> None:
        """Test logging setup with file and console handlers."""
        config = AppConfig()
        config.logging.console_enabled = True
        config.logging.file_path = "/tmp/latred-test.log"
        config.logging.level = "DEBUG"
        config.logging.max_file_size = 1024
        config.logging.backup_count = 3

        with patch("logging.getLogger") as mock_get_logger, patch(
            "pathlib.Path.mkdir"
        ) as mock_mkdir, patch(
            "latred.app.bootstrap.RotatingFileHandler"
        ) as mock_file_handler:
            mock_logger = MagicMock()
            mock_get_logger.return_value = mock_logger
            mock_file_handler.return_value = MagicMock()

            setup_logging(config)

            mock_mkdir.assert_called_once_with(parents=True, exist_ok=True)
            mock_file_handler.assert_called_once_with(
                "/tmp/latred-test.log", maxBytes=1024, backupCount=3
            )
            assert mock_logger.addHandler.call_count == 2

    def test_logging_console_disabled(self) -> None:
        """Test that no handler is installed when every sink is off."""
        config = AppConfig()
        config.logging.console_enabled = False

        with patch("logging.getLogger") as mock_get_logger:
            mock_logger = MagicMock()
            mock_get_logger.return_value = mock_logger

            setup_logging(config)

            mock_logger.addHandler.assert_not_called()

    def test_log_file_written(self) -> None:
        """Test that records reach the rotating log file."""
        with tempfile.TemporaryDirectory() as temp_dir:
            log_file = Path(temp_dir) / "logs" / "latred.log"
            config = AppConfig()
            config.logging.console_enabled = False
            config.logging.file_path = str(log_file)
            config.logging.level = "INFO"

            setup_logging(config)
            logging.getLogger("latred.test").info("reduced basis")
            root = logging.getLogger()
            for handler in root.handlers:
                handler.flush()
                handler.close()
            root.handlers.clear()

            assert "reduced basis" in log_file.read_text()
