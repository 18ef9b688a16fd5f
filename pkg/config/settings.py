"""
Configuration management for the reservoir teleportation simulator.
Holds solver, oracle, validation and logging defaults; only the output
directory may come from the environment (TELEPORT_OUTPUT_DIR or .env).
"""

from functools import lru_cache
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class SolverSettings(BaseModel):
    """Amplitude solver defaults (times in units of 1/omega_0)."""

    dt: float = Field(0.005, gt=0)
    t_max: float = Field(50.0, gt=0)
    max_step: float = Field(0.05, gt=0)
    contractivity_tolerance: float = Field(1e-6, gt=0)


class OracleSettings(BaseModel):
    """Discrete-mode diagonalization oracle."""

    n_modes: int = Field(2000, ge=100)
    omega_max_factor: float = Field(20.0, ge=10.0)
    compare_window: float = Field(20.0, gt=0)
    dt: float = Field(0.005, gt=0)
    tolerance: float = Field(5e-3, gt=0)


class ValidationSettings(BaseModel):
    """Thresholds used by the validation suite."""

    plateau_window: float = Field(200.0, gt=0)
    plateau_dt: float = Field(0.01, gt=0)
    plateau_fraction: float = Field(0.1, gt=0, le=1)
    threshold_margin: float = Field(0.5, gt=0, lt=1)
    bound_above: float = Field(0.05, gt=0)
    bound_below: float = Field(0.01, gt=0)
    rate_tolerance: float = Field(1e-3, gt=0)
    rate_min_population: float = Field(1e-6, gt=0)
    # the central-difference rates need a finer grid than the solver default
    rate_dt: float = Field(0.002, gt=0)
    convergence_ratio: float = Field(3.5, gt=1)
    convergence_dt: float = Field(0.02, gt=0)
    convergence_window: float = Field(20.0, gt=0)
    closed_form_tolerance: float = Field(1e-10, gt=0)


class LoggingSettings(BaseModel):
    """Logging settings."""

    level: str = "INFO"
    json_logs: bool = False
    log_file: Optional[Path] = None
    log_rotation_size: str = "10MB"
    log_backup_count: int = Field(5, ge=0)

    @field_validator("level")
    @classmethod
    def known_level(cls, v: str) -> str:
        if v.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"unknown log level {v!r}")
        return v.upper()


class Settings(BaseSettings):
    """Main settings class that combines all configuration."""

    model_config = SettingsConfigDict(
        env_prefix="TELEPORT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    output_dir: Path = Path("results")

    # nested sections are code defaults, not environment-driven
    solver: SolverSettings = Field(default_factory=SolverSettings)
    oracle: OracleSettings = Field(default_factory=OracleSettings)
    validation: ValidationSettings = Field(default_factory=ValidationSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)

    @classmethod
    def settings_customise_sources(
        cls, settings_cls, init_settings, env_settings, dotenv_settings, file_secret_settings
    ):
        return (init_settings, _OutputDirOnly(env_settings), _OutputDirOnly(dotenv_settings))

    @field_validator("output_dir", mode="before")
    @classmethod
    def ensure_path(cls, v):
        return Path(v) if isinstance(v, str) else v


class _OutputDirOnly:
    """Settings source wrapper that passes through the output directory only."""

    def __init__(self, source):
        self._source = source

    def __call__(self):
        values = self._source()
        return {k: v for k, v in values.items() if k == "output_dir"}


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Get the global settings instance."""
    return Settings()


def reload_settings() -> Settings:
    """Reload settings from environment."""
    get_settings.cache_clear()
    return get_settings()
