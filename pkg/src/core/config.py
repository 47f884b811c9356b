"""
ProbStream Configuration Management
"""

from __future__ import annotations

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: str = Field(default="WARNING", pattern="^(DEBUG|INFO|WARNING|ERROR|CRITICAL)$")
    log_to_file: bool = False
    log_file_path: str = "./logs/probstream.log"
    log_max_bytes: int = Field(default=10_000_000, description="Max log file size in bytes (default 10MB)")
    log_backup_count: int = Field(default=5, description="Number of backup log files to keep")

    # Approximation defaults (overridable per call and by CLI flags)
    default_epsilon: float = Field(default=0.1, gt=0.0, lt=1.0)
    default_delta: float = Field(default=0.1, gt=0.0, lt=1.0)
    default_seed: int = Field(default=0, ge=0, lt=2**64)

    # Parsing
    tol_parse: float = Field(
        default=1e-9, ge=0.0, le=1e-3, description="Slack allowed when an item's probabilities sum past 1"
    )

    # Oracle
    enumeration_budget: int = Field(
        default=10**7, ge=1, description="Largest outcome space the exhaustive oracle will walk"
    )

    # Sketch constants
    #
    # F2 (tug-of-war): width = ceil(ams_width_constant / eps^2) counters averaged per group,
    # depth = ceil(ams_depth_constant * ln(1/delta)) groups combined by median.
    ams_width_constant: float = Field(default=16.0, gt=0.0)
    ams_depth_constant: float = Field(default=8.0, gt=0.0)

    # F0 (bucket sampling): capacity = ceil(f0_capacity_constant / eps^2) kept coordinates per
    # repetition, repetitions = max(f0_min_repetitions, ceil(ln(1/delta))) rounded up to odd.
    f0_capacity_constant: float = Field(default=8.0, gt=0.0)
    f0_min_repetitions: int = Field(default=3, ge=1)

    # Benchmarks
    bench_max_workers: int = Field(default=1, ge=1, le=64)


@lru_cache
def get_settings() -> Settings:
    """
    Get cached settings instance.

    Uses LRU cache to ensure settings are loaded once and reused.
    """
    return Settings()


# Global settings instance
settings = get_settings()
