"""Configuration management system for latred.

This module provides centralized configuration management with support for:
- TOML configuration files
- Environment variable overrides
- Type-safe configuration with validation
- Default values with sensible fallbacks
"""

import os
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import toml

from latred.core.domain import DEFAULT_DELTA, ReductionVariant, SortMode


@dataclass
class ReductionConfig:
    """Sequential reduction settings."""

    delta: float = DEFAULT_DELTA
    """Lovász parameter in (1/2, 1]"""

    max_iterations: int | None = None
    """Iteration cap (None selects ceil(100 n^2 log2(n+1)))"""

    variant: str = ReductionVariant.STANDARD.value
    """Default reduction variant"""

    lovasz_slack: float = 1e-12
    """Relative slack of the Lovász test during reduction"""

    check_slack: float = 1e-9
    """Relative slack of the reducedness checkers"""


@dataclass
class ParallelConfig:
    """Fixed-complexity reduction settings."""

    effective_budget: int | None = None
    """Super-iterations of parallel effective LLL (None = ceil(n log2(n+1)))"""

    deep_budget: int | None = None
    """Rounds of parallel LLL-deep (None = n)"""

    hybrid_parallel_iters: int = 2
    """Parallel rounds before the sequential phase of the hybrid variant"""

    sort_mode: str = SortMode.QR.value
    """Sorting step of parallel LLL-deep (qr, joint or cholesky)"""


@dataclass
class SimulationConfig:
    """Monte Carlo settings."""

    seed: int | None = None
    """Default seed of bench, ber and compare (--seed overrides it)"""

    trials: int = 100
    """Trials per dimension or SNR point"""

    workers: int = 1
    """Worker processes for BER campaigns"""


@dataclass
class OutputConfig:
    """Output file settings."""

    directory: str = "."
    """Base directory for relative output paths"""

    indent: int = 2
    """JSON indentation"""


@dataclass
class LoggingConfig:
    """Logging configuration settings."""

    level: str = "WARNING"
    """Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)"""

    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    """Log message format string"""

    file_path: str | None = None
    """Path to log file (None to disable file logging)"""

    max_file_size: int = 10 * 1024 * 1024  # 10MB
    """Maximum log file size in bytes"""

    backup_count: int = 5
    """Number of log file backups to keep"""

    console_enabled: bool = True
    """Whether to log to stderr"""


@dataclass
class AppConfig:
    """Complete application configuration.

    Settings can be loaded from TOML files and overridden by environment variables.
    """

    reduction: ReductionConfig = field(default_factory=ReductionConfig)
    """Sequential reduction settings"""

    parallel: ParallelConfig = field(default_factory=ParallelConfig)
    """Fixed-complexity reduction settings"""

    simulation: SimulationConfig = field(default_factory=SimulationConfig)
    """Monte Carlo settings"""

    output: OutputConfig = field(default_factory=OutputConfig)
    """Output file settings"""

    logging: LoggingConfig = field(default_factory=LoggingConfig)
    """Logging configuration settings"""

    config_file: str = field(
        default_factory=lambda: str(Path.home() / ".latred" / "config.toml")
    )
    """Path to configuration file"""

    def expand_paths(self) -> None:
        """Expand user paths (~) in configuration values."""
        self.output.directory = os.path.expanduser(self.output.directory)
        if self.logging.file_path:
            self.logging.file_path = os.path.expanduser(self.logging.file_path)
        self.config_file = os.path.expanduser(self.config_file)

    def validate(self) -> list[str]:
        """Validate configuration settings.

        Returns:
            List of validation error messages (empty if valid)
        """
        errors = []

        if not 0.5 < self.reduction.delta <= 1.0:
            errors.append(f"Reduction delta must lie in (0.5, 1]: {self.reduction.delta}")

        valid_variants = [v.value for v in ReductionVariant]
        if self.reduction.variant not in valid_variants:
            errors.append(f"Invalid reduction variant: {self.reduction.variant}")

        if self.reduction.max_iterations is not None and self.reduction.max_iterations < 1:
            errors.append("Max iterations must be positive")

        if self.reduction.lovasz_slack < 0 or self.reduction.check_slack < 0:
            errors.append("Slacks must be non-negative")

        for name in ("effective_budget", "deep_budget"):
            value = getattr(self.parallel, name)
            if value is not None and value < 1:
                errors.append(f"Parallel {name} must be at least 1")

        if self.parallel.hybrid_parallel_iters < 0:
            errors.append("Hybrid parallel iterations must be non-negative")

        valid_sort_modes = [m.value for m in SortMode]
        if self.parallel.sort_mode not in valid_sort_modes:
            errors.append(f"Invalid parallel sort mode: {self.parallel.sort_mode}")

        if self.simulation.trials <= 0:
            errors.append("Simulation trials must be positive")

        if self.simulation.workers <= 0:
            errors.append("Simulation workers must be positive")

        if self.output.indent < 0:
            errors.append("Output indent must be non-negative")

        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if self.logging.level not in valid_levels:
            errors.append(f"Invalid logging level: {self.logging.level}")

        return errors


class ConfigManager:
    """Configuration manager for loading and managing application settings.

    The ConfigManager loads configuration from multiple sources in order of precedence:
    1. Environment variables (highest precedence)
    2. TOML configuration file
    3. Default values (lowest precedence)

    Environment variables use the pattern: LATRED_<SECTION>_<SETTING>
    For example: LATRED_REDUCTION_DELTA, LATRED_LOGGING_LEVEL
    """

    _SECTIONS = ("reduction", "parallel", "simulation", "output", "logging")

    def __init__(self, config_file: str | None = None) -> None:
        """Initialize the configuration manager.

        Args:
            config_file: Path to TOML configuration file (uses default if None)
        """
        self._config_file = config_file

    def load_config(self) -> AppConfig:
        """Load configuration from all sources.

        Returns:
            Complete application configuration

        Raises:
            ConfigurationError: If configuration is invalid
        """
        config = AppConfig()

        config_file_path = self._config_file or config.config_file
        config_file_path = str(Path(config_file_path).expanduser())
        config.config_file = config_file_path

        if os.path.exists(config_file_path):
            try:
                config = self._load_from_toml(config_file_path, config)
            except Exception as e:
                raise ConfigurationError(
                    f"Failed to load config file {config_file_path}: {e}"
                ) from e
        elif self._config_file is not None:
            raise ConfigurationError(f"Config file not found: {config_file_path}")

        try:
            config = self._load_from_environment(config)
        except ValueError as e:
            raise ConfigurationError(f"Invalid environment override: {e}") from e

        config.expand_paths()

        validation_errors = config.validate()
        if validation_errors:
            raise ConfigurationError(
                f"Configuration validation failed: {'; '.join(validation_errors)}"
            )

        return config

    def create_default_config_file(self, path: str | None = None) -> str:
        """Create a default configuration file.

        Args:
            path: Path where to create the config file (uses default if None)

        Returns:
            Path to the created configuration file
        """
        config_path = os.path.expanduser(
            path or self._config_file or "~/.latred/config.toml"
        )
        config_dir = os.path.dirname(config_path)
        if config_dir:
            os.makedirs(config_dir, exist_ok=True)

        with open(config_path, "w", encoding="utf-8") as f:
            f.write(self._generate_default_toml())

        return config_path

    def _load_from_toml(self, file_path: str, base_config: AppConfig) -> AppConfig:
        """Load configuration from TOML file.

        Args:
            file_path: Path to TOML file
            base_config: Base configuration to update

        Returns:
            Updated configuration
        """
        with open(file_path, "rb") as f:
            toml_data = tomllib.load(f)

        for section in self._SECTIONS:
            if section in toml_data:
                self._update_config_section(
                    getattr(base_config, section), toml_data[section]
                )

        return base_config

    def _load_from_environment(self, base_config: AppConfig) -> AppConfig:
        """Load configuration overrides from environment variables.

        Args:
            base_config: Base configuration to update

        Returns:
            Updated configuration
        """
        env_mappings: dict[str, tuple[str, str, type[Any]]] = {
            # Reduction settings
            "LATRED_REDUCTION_DELTA": ("reduction", "delta", float),
            "LATRED_REDUCTION_MAX_ITERATIONS": ("reduction", "max_iterations", int),
            "LATRED_REDUCTION_VARIANT": ("reduction", "variant", str),
            "LATRED_REDUCTION_LOVASZ_SLACK": ("reduction", "lovasz_slack", float),
            "LATRED_REDUCTION_CHECK_SLACK": ("reduction", "check_slack", float),
            # Parallel settings
            "LATRED_PARALLEL_EFFECTIVE_BUDGET": ("parallel", "effective_budget", int),
            "LATRED_PARALLEL_DEEP_BUDGET": ("parallel", "deep_budget", int),
            "LATRED_PARALLEL_HYBRID_PARALLEL_ITERS": (
                "parallel",
                "hybrid_parallel_iters",
                int,
            ),
            "LATRED_PARALLEL_SORT_MODE": ("parallel", "sort_mode", str),
            # Simulation settings
            "LATRED_SIMULATION_SEED": ("simulation", "seed", int),
            "LATRED_SIMULATION_TRIALS": ("simulation", "trials", int),
            "LATRED_SIMULATION_WORKERS": ("simulation", "workers", int),
            # Output settings
            "LATRED_OUTPUT_DIRECTORY": ("output", "directory", str),
            "LATRED_OUTPUT_INDENT": ("output", "indent", int),
            # Logging settings
            "LATRED_LOGGING_LEVEL": ("logging", "level", str),
            "LATRED_LOGGING_FILE_PATH": ("logging", "file_path", str),
            "LATRED_LOGGING_CONSOLE_ENABLED": ("logging", "console_enabled", bool),
        }

        for env_var, (section_name, field_name, converter) in env_mappings.items():
            value = os.getenv(env_var)
            if value is not None:
                section = getattr(base_config, section_name)
                setattr(section, field_name, self._convert_value(value, converter))

        return base_config

    def _update_config_section(
        self, config_section: object, toml_section: dict[str, Any]
    ) -> None:
        """Update a configuration section with values from TOML.

        Args:
            config_section: Configuration section object to update
            toml_section: Dictionary of values from TOML
        """
        for key, value in toml_section.items():
            if hasattr(config_section, key):
                setattr(config_section, key, value)

    def _convert_value(self, value: str, converter: type[Any]) -> Any:
        """Convert string value to appropriate type.

        Args:
            value: String value to convert
            converter: Type to convert to (bool, int, float or str)

        Returns:
            Converted value
        """
        if converter is bool:
            return value.lower() in ("true", "1", "yes", "on")
        elif converter is int:
            return int(value)
        elif converter is float:
            return float(value)
        else:
            return value

    def _generate_default_toml(self) -> str:
        """Generate default TOML configuration content.

        Unset optional values are omitted, since TOML has no null.

        Returns:
            Default TOML configuration as string
        """
        defaults = AppConfig()
        document = {
            section: {
                key: value
                for key, value in asdict(getattr(defaults, section)).items()
                if value is not None
            }
            for section in self._SECTIONS
        }
        header = (
            "# latred configuration file\n"
            "# Settings can be overridden by environment variables using the pattern\n"
            "# LATRED_<SECTION>_<SETTING> (e.g. LATRED_REDUCTION_DELTA).\n\n"
        )
        return header + toml.dumps(document)


class ConfigurationError(Exception):
    """Exception raised for configuration-related errors."""

    pass
