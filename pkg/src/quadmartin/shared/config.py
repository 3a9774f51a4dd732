"""Configuration management for quadmartin."""

import json
import os
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field, ValidationError, field_validator

from quadmartin.shared.exceptions import ConfigurationError


class ModelConfig(BaseModel):
    """Process parameters and starting point."""

    sigma1: float = 1.0
    sigma2: float = 1.0
    mu1: float = 0.5
    mu2: float = 0.5
    r1: float = 0.0
    r2: float = 0.0
    z0_x: float = Field(default=1.0, ge=0.0)
    z0_y: float = Field(default=1.0, ge=0.0)

    @property
    def z0(self) -> tuple[float, float]:
        """Starting point as a tuple."""
        return (self.z0_x, self.z0_y)


class SeriesConfig(BaseModel):
    """Compensation series truncation settings."""

    tol: float = Field(default=1e-12, gt=0.0)
    n_max: int = Field(default=10000, ge=10)
    abs_floor: float = Field(default=1e-300, gt=0.0)
    harmonic_terms: int = Field(default=4000, ge=10)


class QuadratureConfig(BaseModel):
    """Contour quadrature settings for Green density inversion."""

    epsilon: float | None = Field(default=None, gt=0.0)
    v_max: float | None = Field(default=None, gt=0.0)
    rel_tol: float = Field(default=1e-8, gt=0.0)
    abs_tol: float = Field(default=1e-11, gt=0.0)
    max_subdiv: int = Field(default=200, ge=1)


class MonteCarloConfig(BaseModel):
    """Monte Carlo experiment settings."""

    n_paths: int = Field(default=100_000, ge=2)
    dt: float = Field(default=1e-3, gt=0.0)
    t_max: float = Field(default=40.0, gt=0.0)
    seed: int | None = Field(default=None, ge=0)
    batch_size: int = Field(default=1024, ge=1)
    antithetic: bool = False
    threads: int = Field(default=1, ge=1, le=64)
    max_steps: int = Field(default=2_000_000, ge=1)


class LoggingConfig(BaseModel):
    """Logging configuration."""

    level: str = "WARNING"
    format: str = "%(message)s"
    file_path: Path | None = None

    @field_validator("level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate logging level."""
        valid_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        if v.upper() not in valid_levels:
            raise ValueError(f"Invalid log level: {v}. Must be one of {valid_levels}")
        return v.upper()


# flat key=value names accepted in config files, mapped to (section, field)
FLAT_KEYS: dict[str, tuple[str, str]] = {
    **{
        key: ("model", key)
        for key in ("sigma1", "sigma2", "mu1", "mu2", "r1", "r2", "z0_x", "z0_y")
    },
    "tol": ("series", "tol"),
    "n_max": ("series", "n_max"),
    "harmonic_terms": ("series", "harmonic_terms"),
    "epsilon": ("quadrature", "epsilon"),
    "v_max": ("quadrature", "v_max"),
    "rel_tol": ("quadrature", "rel_tol"),
    "abs_tol": ("quadrature", "abs_tol"),
    "max_subdiv": ("quadrature", "max_subdiv"),
    "n_paths": ("montecarlo", "n_paths"),
    "dt": ("montecarlo", "dt"),
    "t_max": ("montecarlo", "t_max"),
    "seed": ("montecarlo", "seed"),
    "batch_size": ("montecarlo", "batch_size"),
    "antithetic": ("montecarlo", "antithetic"),
    "threads": ("montecarlo", "threads"),
    "log_level": ("logging", "level"),
}

_SECTIONS = ("model", "series", "quadrature", "montecarlo", "logging")


class QuadMartinConfig(BaseModel):
    """Main application configuration."""

    model: ModelConfig = Field(default_factory=ModelConfig)
    series: SeriesConfig = Field(default_factory=SeriesConfig)
    quadrature: QuadratureConfig = Field(default_factory=QuadratureConfig)
    montecarlo: MonteCarloConfig = Field(default_factory=MonteCarloConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)

    debug: bool = False

    @classmethod
    def _build(cls, config_data: dict[str, Any]) -> "QuadMartinConfig":
        """Validate nested data, reporting the first offending key."""
        try:
            return cls(**config_data)
        except ValidationError as e:
            first = e.errors()[0]
            key = ".".join(str(part) for part in first["loc"])
            raise ConfigurationError(first["msg"], key=key) from e

    @staticmethod
    def _assign(config_data: dict[str, Any], key: str, value: Any) -> None:
        """Place a flat or dotted key into the nested config mapping."""
        if key in FLAT_KEYS:
            section, name = FLAT_KEYS[key]
        elif "." in key and key.split(".", 1)[0] in _SECTIONS:
            section, name = key.split(".", 1)
        elif key == "debug":
            config_data["debug"] = value
            return
        else:
            raise ConfigurationError("unknown configuration key", key=key)
        config_data.setdefault(section, {})[name] = value

    @classmethod
    def _parse_model_env(cls, config_data: dict[str, Any]) -> None:
        """Parse model and numeric environment variables."""
        for key in FLAT_KEYS:
            if value := os.getenv(f"QUADMARTIN_{key.upper()}"):
                cls._assign(config_data, key, value)

    @classmethod
    def from_env(cls) -> "QuadMartinConfig":
        """Create configuration from environment variables."""
        config_data: dict[str, Any] = {}
        cls._parse_model_env(config_data)

        if debug := os.getenv("QUADMARTIN_DEBUG"):
            config_data["debug"] = debug.lower() in ("1", "true", "yes")

        return cls._build(config_data)

    @classmethod
    def parse_key_values(cls, text: str) -> dict[str, Any]:
        """Parse flat ``key=value`` lines into nested config data."""
        config_data: dict[str, Any] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigurationError(
                    f"line {lineno} is not of the form key=value", key=line
                )
            key, value = (part.strip() for part in line.split("=", 1))
            cls._assign(config_data, key, value)
        return config_data

    @classmethod
    def _flatten_mapping(cls, raw: dict[str, Any]) -> dict[str, Any]:
        """Accept both sectioned and flat mappings (JSON/TOML)."""
        config_data: dict[str, Any] = {}
        for key, value in raw.items():
            if key in _SECTIONS and isinstance(value, dict):
                config_data.setdefault(key, {}).update(value)
            else:
                cls._assign(config_data, key, value)
        return config_data

    def merged(self, overrides: dict[str, Any]) -> "QuadMartinConfig":
        """Return a copy with flat-key overrides applied (``None`` values ignored)."""
        config_data = self.model_dump()
        for key, value in overrides.items():
            if value is None:
                continue
            patch: dict[str, Any] = {}
            self._assign(patch, key, value)
            for section, fields in patch.items():
                if isinstance(fields, dict):
                    config_data.setdefault(section, {}).update(fields)
                else:
                    config_data[section] = fields
        return self._build(config_data)

    def save_to_file(self, path: Path) -> None:
        """Save configuration to TOML file."""
        try:
            import tomli_w
        except ImportError as e:
            raise ImportError(
                "tomli_w is required for saving config files. Install with: uv add tomli-w"
            ) from e

        data = self.model_dump(mode="json", exclude_none=True)
        try:
            with open(path, "wb") as f:
                tomli_w.dump(data, f)
        except OSError as e:
            raise ConfigurationError(f"cannot write {path}: {e}") from e

    @classmethod
    def from_file(
        cls, path: Path, base: "QuadMartinConfig | None" = None
    ) -> "QuadMartinConfig":
        """Load configuration from a TOML, JSON or key=value file.

        Args:
            path: Configuration file
            base: Configuration the file values are layered onto

        Returns:
            The merged configuration

        Raises:
            ConfigurationError: If the file cannot be read or holds invalid keys
        """
        try:
            if path.suffix == ".toml":
                import tomli

                with open(path, "rb") as f:
                    config_data = cls._flatten_mapping(tomli.load(f))
            elif path.suffix == ".json":
                raw = json.loads(path.read_text())
                if not isinstance(raw, dict):
                    raise ConfigurationError("JSON config must be an object")
                config_data = cls._flatten_mapping(raw)
            else:
                config_data = cls.parse_key_values(path.read_text())
        except ConfigurationError:
            raise
        except (OSError, ValueError) as e:
            raise ConfigurationError(f"cannot read {path}: {e}") from e

        if base is None:
            return cls._build(config_data)
        merged = base.model_dump()
        for section, fields in config_data.items():
            if isinstance(fields, dict):
                merged.setdefault(section, {}).update(fields)
            else:
                merged[section] = fields
        return cls._build(merged)


# Global configuration instance
_config: QuadMartinConfig | None = None


def get_config() -> QuadMartinConfig:
    """Get the global configuration instance."""
    global _config
    if _config is None:
        _config = QuadMartinConfig.from_env()
    return _config


def set_config(config: QuadMartinConfig) -> None:
    """Set the global configuration instance."""
    global _config
    _config = config
