"""Core configuration module using Pydantic Settings.

This module provides centralized configuration management for the Weyl groupoid
toolkit. All configuration is loaded from environment variables with sensible
defaults; command-line flags override individual values per run.
"""

from functools import lru_cache
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    # Application Environment
    APP_ENV: str = Field(default="development", description="Application environment")
    LOG_LEVEL: str = Field(default="WARNING", description="Logging level")

    # Scalar arithmetic
    TORSION_ORDER: int = Field(
        default=2520,
        ge=2,
        description="Order N of the torsion subgroup of roots of unity (must be even)",
    )

    # Exploration caps
    MAX_BASES: int = Field(
        default=10**6, ge=1, description="Maximum number of bases reached by explore"
    )
    MAX_COEFF: int = Field(
        default=10**4,
        ge=1,
        description="Largest absolute basis coordinate before explore gives up",
    )
    SWEEP_MAX_BASES: int = Field(
        default=200_000, ge=1, description="Basis cap used by the exhaustive sweep"
    )
    SWEEP_MAX_COEFF: int = Field(
        default=12, ge=1, description="Coordinate cap used by the exhaustive sweep"
    )

    # Catalog verification
    CROSS_ROW_PAIRS: int = Field(
        default=20,
        ge=0,
        description="Number of sampled cross-row pairs checked for non-equivalence",
    )
    VERIFY_RANKS: list[int] = Field(
        default=[5, 6], description="Ranks at which rank >= 5 families are verified"
    )
    WORKERS: int = Field(
        default=1, ge=1, le=64, description="Process pool size for verify commands"
    )
    CATALOG_DIR: str | None = Field(
        default=None,
        description="Directory holding manifest.txt and appendix.txt (packaged data when unset)",
    )

    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", case_sensitive=True, extra="ignore"
    )

    @property
    def catalog_path(self) -> Path:
        """Get absolute path to the catalog directory."""
        if self.CATALOG_DIR:
            return Path(self.CATALOG_DIR).expanduser().resolve()
        return Path(__file__).parent.parent / "data" / "catalog"

    @property
    def is_production(self) -> bool:
        """Check if running in production environment."""
        return self.APP_ENV.lower() == "production"

    def model_post_init(self, __context) -> None:
        """Post-initialization validation."""
        if self.TORSION_ORDER % 2:
            raise ValueError("TORSION_ORDER must be even so that -1 exists")

        if any(rank < 2 for rank in self.VERIFY_RANKS):
            raise ValueError("VERIFY_RANKS entries must be at least 2")


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance.

    Returns:
        Settings: Singleton settings instance
    """
    return Settings()
