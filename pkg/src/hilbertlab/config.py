"""Application configuration."""

import os
from typing import Literal

from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
    TomlConfigSettingsSource,
)

CONFIG_FILE_ENV = "HILBERTLAB_CONFIG_FILE"


class Settings(BaseSettings):
    """Library settings loaded from environment variables and an optional TOML file."""

    # Logging
    environment: Literal["development", "production"] = "development"
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"

    # Default grid
    grid_level: int = 20  # J, radial grid r_j = 1 - 2^-j
    angular_nodes: int = 512
    truncation: int = 10000
    rel_tol: float = 1e-9
    max_doublings: int = 14
    tail_tol: float = 1e-10

    # Verdict thresholds
    stable_change: float = 0.01  # running sup moved less than this over the last 3 levels
    diverging_growth: float = 0.10  # per-level growth that counts as divergence
    compactness_decay: float = 0.25  # final/initial ratio over k = 4 -> 256
    ell_q_cutoff: int = 16384

    # Cache
    cache_maxsize: int = 256
    cache_ttl: int = 3600  # seconds a verification report stays cached

    # HTTP
    slow_request_seconds: float = 30.0  # verify calls above this are logged at WARNING

    model_config = SettingsConfigDict(env_prefix="HILBERTLAB_", toml_file="hilbertlab.toml")

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        """Flags (init) win over the environment, which wins over the config file."""
        toml_file = os.environ.get(CONFIG_FILE_ENV)
        toml_source = (
            TomlConfigSettingsSource(settings_cls, toml_file=toml_file)
            if toml_file
            else TomlConfigSettingsSource(settings_cls)
        )
        return (init_settings, env_settings, toml_source)


settings = Settings()
