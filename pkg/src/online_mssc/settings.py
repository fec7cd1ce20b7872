"""Central application settings using Pydantic."""

from pathlib import Path

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application configuration loaded from MSSC_* environment variables."""

    # Core application
    log_level: str = Field("INFO", description="Root logging level")
    output_dir: Path = Field(Path("runs"), description="Default report directory")

    # Simulation
    check_invariants: bool = Field(
        True, description="Assert budget invariants inside every DLM step"
    )

    # Campaigns
    workers: int = Field(1, ge=1, description="Process-pool size for campaigns")

    model_config = SettingsConfigDict(
        env_prefix="MSSC_", env_file=".env", extra="ignore"
    )

    @field_validator("output_dir", mode="before")
    @classmethod
    def expand_path(cls, v: str | Path) -> Path:
        return Path(v).expanduser()

    @field_validator("log_level", mode="before")
    @classmethod
    def normalize_level(cls, v: str) -> str:
        return str(v).upper()


def get_settings() -> Settings:
    """Return application settings loaded from environment variables."""
    return Settings()
