import os
from pathlib import Path

from pydantic import AliasChoices, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from zetakit.models import OutputFormat


class RunConfig(BaseSettings):
    # Numerics
    tolerance: float = Field(1e-8, gt=0)
    max_terms: int = Field(2000, ge=16)

    # Output
    output_format: OutputFormat = OutputFormat.PLAIN

    # Zero cache
    zero_cache_path: Path = Field(
        Path("data/zeros.csv"),
        validation_alias=AliasChoices("zero_cache_path", "zetakit_cache"),
    )

    # Application
    parallelism: int = Field(0, ge=0)  # 0 = auto
    log_level: str = "WARNING"
    seed: int = 20121127

    model_config = SettingsConfigDict(
        env_prefix="ZETAKIT_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    def workers(self) -> int:
        """Resolve `parallelism` to a concrete worker count"""
        if self.parallelism > 0:
            return self.parallelism
        return min(8, os.cpu_count() or 1)


def load_config(**overrides) -> RunConfig:
    """Build a RunConfig; explicit overrides beat environment and .env values"""
    return RunConfig(**{k: v for k, v in overrides.items() if v is not None})
