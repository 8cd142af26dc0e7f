from __future__ import annotations

import os
from enum import Enum
from functools import lru_cache

from pydantic_settings import BaseSettings


class Environment(str, Enum):
    DEVELOPMENT = "development"
    PRODUCTION = "production"
    TEST = "test"


class Settings(BaseSettings):
    # Application settings
    APP_NAME: str = "rank2-roots"
    VERSION: str = "0.1.0"
    DEBUG: bool = False
    ENVIRONMENT: Environment = Environment.DEVELOPMENT

    # Oracle settings
    BFS_CAP_PER_OBJECT: int = 24  # budget is cap * |A| + 1 states
    BRUTEFORCE_MAX_LENGTH: int = 12

    # Enumeration settings
    ENUMERATE_MAX_LENGTH: int = 20

    # Batch processing
    BATCH_WORKERS: int = 4

    # Exhaustive grid bound used by the integration suite
    GRID_MAX_ENTRY: int = 7

    # Output
    JSON_INDENT: int = 2

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    class Config:
        env_prefix = "RANK2_"
        env_file = (".env", ".env.test")
        case_sensitive = True
        use_enum_values = True
        extra = "ignore"

    def is_testing(self) -> bool:
        return self.ENVIRONMENT == Environment.TEST

    def bfs_cap(self, object_count: int) -> int:
        """Default groupoid BFS budget for a scheme with ``object_count`` objects."""
        return self.BFS_CAP_PER_OBJECT * object_count + 1


settings: Settings | None = None


def init_settings() -> Settings:
    """Initialize settings based on environment."""
    global settings
    if settings is None:
        settings = get_settings()
    return settings


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    if os.getenv("RANK2_ENVIRONMENT") == "test":
        return Settings(
            ENVIRONMENT=Environment.TEST,
            DEBUG=True,
            LOG_LEVEL="DEBUG",
            BATCH_WORKERS=1,
        )
    return Settings()
