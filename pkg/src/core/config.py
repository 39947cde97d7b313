from functools import lru_cache
from pathlib import Path
from typing import Literal

from pydantic import field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Application settings with environment variables validation using Pydantic.

    Every field can be overridden through a ``TIHANY_``-prefixed environment
    variable, e.g. ``TIHANY_MAX_N=32``.
    """

    # Application Settings
    APP_NAME: str = "tihany-split"
    APP_VERSION: str = "0.1.0"

    # Solver limits
    MAX_N: int = 64
    ORACLE_MAX_N: int = 14
    FALLBACK_MAX_N: int = 20
    ENUMERATION_MAX_N: int = 10
    DEDUP_MAX_N: int = 10
    EXHAUSTIVE_SWEEP_MAX_N: int = 9

    # Sweep Settings
    SWEEP_WORKERS: int = 1
    SWEEP_BATCH_SIZE: int = 256
    SWEEP_PROGRESS: bool = False
    RANDOM_THINNING: float = 0.25

    # Reports
    REPORT_DIR: Path = Path("reports")
    DUMP_COUNTEREXAMPLES: bool = True

    # Logging Settings
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: Literal["json", "text"] = "text"
    LOG_FILE: str | None = None
    LOG_SAMPLE_RATE: float = 0.05
    LOG_MODULE_LEVELS: dict[str, str] = {
        "src.services.lab_service": "INFO",
    }

    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", env_prefix="TIHANY_", case_sensitive=True
    )

    @field_validator(
        "MAX_N",
        "ORACLE_MAX_N",
        "FALLBACK_MAX_N",
        "ENUMERATION_MAX_N",
        "DEDUP_MAX_N",
        "EXHAUSTIVE_SWEEP_MAX_N",
        "SWEEP_WORKERS",
        "SWEEP_BATCH_SIZE",
    )
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Limits and worker counts must be positive."""
        if v < 1:
            raise ValueError("must be a positive integer")
        return v

    @field_validator("RANDOM_THINNING", "LOG_SAMPLE_RATE")
    @classmethod
    def validate_probability(cls, v: float) -> float:
        if not 0.0 <= v <= 1.0:
            raise ValueError("must lie in [0, 1]")
        return v

    @model_validator(mode="after")
    def validate_caps(self) -> "Settings":
        """Oracle and fallback caps may not exceed the global vertex cap."""
        if self.ORACLE_MAX_N > self.MAX_N:
            self.ORACLE_MAX_N = self.MAX_N
        if self.FALLBACK_MAX_N > self.MAX_N:
            self.FALLBACK_MAX_N = self.MAX_N
        return self


@lru_cache
def get_settings() -> Settings:
    return Settings()
