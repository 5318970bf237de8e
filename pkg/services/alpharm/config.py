"""
Alpharm Configuration
- Environment-driven settings (ALPHARM_ prefix, optional .env file)
- One cached settings instance per process
"""

from typing import Literal, Optional, get_args

from dotenv import load_dotenv
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


LogLevel = Literal["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"]
LOG_LEVELS = list(get_args(LogLevel))


class AlphaHarmonicSettings(BaseSettings):
    """Numeric defaults for evaluation, quadrature and verification"""

    model_config = SettingsConfigDict(env_prefix="ALPHARM_", env_file=".env", extra="ignore")

    seed: int = 0
    log_level: LogLevel = "WARNING"
    log_format: Literal["text", "json"] = "text"

    quad_n: int = Field(256, ge=16)
    truncation_order: int = Field(64, ge=1)
    grid_radial: int = Field(64, ge=16)
    grid_angular: int = Field(128, ge=16)
    hardy_angles: int = Field(512, ge=16)
    trace_samples: int = Field(8192, ge=16)

    verify_points: int = Field(200, ge=1)
    # relative to M
    bound_tolerance: float = Field(1e-6, gt=0)
    residual_step: float = Field(1e-3, ge=1e-5, le=1e-2)
    # relative to max(1, M)
    residual_tolerance: float = Field(1e-4, gt=0)

    @field_validator("log_level", mode="before")
    @classmethod
    def _upper_level(cls, value):
        return value.upper() if isinstance(value, str) else value


_settings: Optional[AlphaHarmonicSettings] = None


def get_settings() -> AlphaHarmonicSettings:
    """Get the process-wide settings instance"""
    global _settings
    if _settings is None:
        load_dotenv()
        _settings = AlphaHarmonicSettings()
    return _settings


def reset_settings() -> None:
    """Drop the cached instance so the next call re-reads the environment"""
    global _settings
    _settings = None
