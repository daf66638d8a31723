from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from finfish import __version__

load_dotenv()


class Settings(BaseSettings):
    # Cache
    cache: Optional[Path] = Field(None, description="Cache directory; caching is off when unset")

    # Logging
    log_level: str = Field("INFO")

    # Budgets
    object_budget: int = Field(10**8, description="Max cell sides held by an oracle frontier")
    term_budget: int = Field(5_000_000, description="Max objects produced by a single enumeration")

    # Suite defaults
    series_order: int = Field(12)
    full_series_order: int = Field(10)
    suite_max_size: int = Field(10)
    suite_max_area: int = Field(6)

    artifact_version: str = Field(__version__)

    model_config = SettingsConfigDict(env_prefix="FINFISH_", env_file=".env", extra="ignore")


settings = Settings()
