"""Application bootstrap for latred.

This module loads the layered configuration and sets up logging before a
command runs.
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path

from latred.infrastructure.config import AppConfig, ConfigManager

logger = logging.getLogger(__name__)


def load_configuration(config_file: str | None = None) -> AppConfig:
    """Load and validate the configuration.

    A missing default file is not an error; a missing explicit file is.

    Raises:
        ConfigurationError: If the configuration cannot be loaded or is invalid
    """
    config = ConfigManager(config_file).load_config()
    logger.debug(f"Configuration loaded from: {config.config_file}")
    return config


def setup_logging(config: AppConfig, level: str | None = None) -> None:
    """Set up application logging based on configuration.

    Console output goes to stderr so that results written to stdout stay
    machine-readable.

    Args:
        config: Application configuration containing logging settings
        level: Level overriding the configured one
    """
    level_name = (level or config.logging.level).upper()

    if config.logging.file_path:
        log_path = Path(config.logging.file_path)
        log_path.parent.mkdir(parents=True, exist_ok=True)

    root_logger = logging.getLogger()
    root_logger.setLevel(getattr(logging, level_name))
    root_logger.handlers.clear()

    formatter = logging.Formatter(config.logging.format)

    if config.logging.console_enabled:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(formatter)
        root_logger.addHandler(console_handler)

    if config.logging.file_path:
        file_handler = RotatingFileHandler(
            config.logging.file_path,
            maxBytes=config.logging.max_file_size,
            backupCount=config.logging.backup_count,
        )
        file_handler.setFormatter(formatter)
        root_logger.addHandler(file_handler)

    logger.info(f"Logging configured: level={level_name}")
