"""Configuration management for latred.

This package provides configuration management functionality including:
- TOML file configuration loading
- Environment variable overrides
- Centralized application settings
"""

from latred.infrastructure.config.config_manager import (
    AppConfig,
    ConfigManager,
    ConfigurationError,
)

__all__ = ["AppConfig", "ConfigManager", "ConfigurationError"]
