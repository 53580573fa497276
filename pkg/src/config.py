"""
Configuration Management.

Environment-based configuration with validation and type safety. Every
setting has a default; overrides come from ``BWC_``-prefixed environment
variables or a ``.env`` file.
"""

from typing import Literal, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

THREE_LETTER_CENSUS_CAP = 60
FOUR_LETTER_CENSUS_CAP = 58


class ObservabilityConfig(BaseSettings):
    """Configuration for observability."""

    log_level: str = Field("WARNING", description="Log level")
    log_format: Literal["json", "console"] = Field(
        "json", description="Render log events as JSON lines or for a terminal"
    )

    model_config = SettingsConfigDict(
        env_prefix="BWC_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


class LimitsConfig(BaseSettings):
    """Caps on exhaustive searches."""

    max_permutation_alphabet: int = Field(
        8, description="Largest alphabet for which all orders are enumerated"
    )
    max_census_length: int = Field(
        THREE_LETTER_CENSUS_CAP, description="Longest factor length a three-letter census visits"
    )
    max_multi_census_length: int = Field(
        FOUR_LETTER_CENSUS_CAP, description="Longest factor length a four-letter census visits"
    )
    max_stage: int = Field(
        64, description="Largest directive stage a command evolves or scans for witnesses"
    )
    census_workers: int = Field(1, ge=1, description="Worker processes for a census, 1 runs inline")
    max_reported_failures: int = Field(
        20, ge=1, description="Failures kept in a verification suite report"
    )

    model_config = SettingsConfigDict(
        env_prefix="BWC_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


class AppConfig(BaseSettings):
    """
    Main application configuration.

    Aggregates all configuration sections and provides validation.
    """

    app_name: str = Field("bwclusters", description="Application name")

    observability: ObservabilityConfig = Field(default_factory=ObservabilityConfig)  # type: ignore[arg-type]
    limits: LimitsConfig = Field(default_factory=LimitsConfig)  # type: ignore[arg-type]

    model_config = SettingsConfigDict(
        env_prefix="BWC_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    def validate_required_config(self) -> None:
        """
        Validate that the limits are consistent.

        Raises ValueError if a cap exceeds what exhaustive search supports.
        """
        limits = self.limits
        if not 1 <= limits.max_census_length <= THREE_LETTER_CENSUS_CAP:
            raise ValueError(
                f"max_census_length must be between 1 and {THREE_LETTER_CENSUS_CAP}"
            )
        if not 1 <= limits.max_multi_census_length <= FOUR_LETTER_CENSUS_CAP:
            raise ValueError(
                f"max_multi_census_length must be between 1 and {FOUR_LETTER_CENSUS_CAP}"
            )
        if not 2 <= limits.max_permutation_alphabet <= 8:
            raise ValueError("max_permutation_alphabet must be between 2 and 8")
        if limits.max_stage < 1:
            raise ValueError("max_stage must be positive")


# Global config instance (lazy loaded)
_config: Optional[AppConfig] = None


def get_config() -> AppConfig:
    """
    Get application configuration (singleton pattern).

    Loads config from environment variables and .env file.
    """
    global _config
    if _config is None:
        _config = AppConfig()  # type: ignore[call-arg]
        _config.validate_required_config()
    return _config


def reset_config() -> None:
    """Drop the cached configuration so the next ``get_config`` reloads it."""
    global _config
    _config = None
