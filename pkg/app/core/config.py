"""
Configuration management using Pydantic Settings
Loads simulation defaults from environment variables (.env file)
"""

from typing import Literal

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Library and CLI defaults loaded from environment variables
    Experiment files override the code defaults per run
    """

    # ========================================================================
    # APPLICATION
    # ========================================================================
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: Literal["json", "text"] = "json"
    OUTPUT_DIR: str = "results"
    MAX_WORKERS: int = 1  # trial-level parallelism, results are order-independent

    # ========================================================================
    # RANDOMNESS
    # ========================================================================
    DEFAULT_SEED: int = 0

    # ========================================================================
    # POLAR CODE CONSTRUCTION
    # ========================================================================
    DEFAULT_DELTA: float = 1e-3  # Bhattacharyya threshold for per-state info sets
    DEFAULT_BEC_BACKOFF: float = 0.05  # rate margin of the blockwise BEC codes
    # B = 256 Monte-Carlo runs need DEFAULT_DELTA ~ 1e-6 and DEFAULT_BEC_BACKOFF ~ 0.25
    LLR_SATURATION: float = 1000.0  # magnitude used for "known" evidence

    # ========================================================================
    # EXPANSION CODING
    # ========================================================================
    DEFAULT_L1: int = 24
    DEFAULT_L2: int = 24
    ACTIVE_LEVEL_CUT: float = 0.45  # levels with p_l >= cut carry uniform codewords

    # ========================================================================
    # MONTE-CARLO
    # ========================================================================
    ABORT_BLER: float = 0.5  # block error rate above which a run is flagged

    @field_validator("LOG_LEVEL")
    @classmethod
    def normalize_log_level(cls, v: str) -> str:
        """Accept lower-case level names"""
        return v.upper()

    @field_validator("MAX_WORKERS")
    @classmethod
    def positive_workers(cls, v: int) -> int:
        if v < 1:
            raise ValueError("MAX_WORKERS must be at least 1")
        return v

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )


# Global settings instance
settings = Settings()


# Export settings
__all__ = ["settings", "Settings"]
