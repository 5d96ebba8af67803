"""Module for load settings form `.env` or from environment variables."""

from functools import lru_cache
from typing import Literal

from dotenv import find_dotenv
from pydantic.types import PositiveInt
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.pkg.models.core.logger import LoggerLevel

__all__ = ["Settings", "get_settings"]


class _Settings(BaseSettings):
    """Base settings for all settings.

    Use double underscore for nested env variables.

    Examples:
        `.env` file should look like::

            LOGGER__LEVEL="DEBUG"
            LOGGER__ENVIRONMENT="dev"

            ENGINE__STRATEGY="binary"
            ENGINE__DEBUG_CHECKS=true

            ORACLE__MAX_DECOMPRESSED_LENGTH=100000

    Warnings:
        In the case where a value is specified for the same Settings field in multiple
        ways, the selected value is determined as follows
        (in descending order of priority):

        1. Arguments passed to the Settings class initializer.
        2. Environment variables.
        3. Variables loaded from a dotenv (.env) file.
        4. The default field values for the Settings model.

    See Also:
        https://docs.pydantic.dev/latest/usage/pydantic_settings/
    """

    model_config = SettingsConfigDict(
        env_file_encoding="utf-8",
        case_sensitive=True,
        env_nested_delimiter="__",
        extra="ignore",
    )


class Logging(_Settings):
    """Logging settings."""

    #: LoggerLevel: Level of logging which outs in stderr.
    LEVEL: LoggerLevel = LoggerLevel.WARNING
    #: str: ``dev`` pretty-prints json records.
    ENVIRONMENT: Literal["dev", "prod"] = "prod"


class Oracle(_Settings):
    """Brute-force referee settings."""

    #: PositiveInt: Oracles refuse values longer than this.
    MAX_DECOMPRESSED_LENGTH: PositiveInt = 100_000


class Engine(_Settings):
    """Phase engine settings."""

    #: str: Crossing pairs schedule.
    STRATEGY: Literal["greedy", "binary"] = "greedy"
    #: bool: Cross-check every phase against the oracle on small instances.
    DEBUG_CHECKS: bool = False
    #: PositiveInt: Largest decompressed text length checked in debug mode.
    DEBUG_CHECK_LIMIT: PositiveInt = 10_000


class Bench(_Settings):
    """Benchmark harness settings."""

    #: PositiveInt: Size of the process pool.
    WORKERS: PositiveInt = 1
    #: PositiveInt: Decompress-and-search baseline refuses longer texts.
    BASELINE_BUDGET: PositiveInt = 100_000_000


class Settings(_Settings):
    """Application settings.

    Formed from `.env` and environment variables; every group has
    defaults, so an empty environment is valid.
    """

    #: Logging: Logging settings.
    LOGGER: Logging = Logging()

    #: Oracle: Referee budget.
    ORACLE: Oracle = Oracle()

    #: Engine: Phase engine settings.
    ENGINE: Engine = Engine()

    #: Bench: Benchmark settings.
    BENCH: Bench = Bench()


@lru_cache
def get_settings(env_file: str = ".env") -> Settings:
    """Create settings instance."""

    return Settings(_env_file=find_dotenv(env_file))
