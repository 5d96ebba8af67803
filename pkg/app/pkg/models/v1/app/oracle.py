"""Referee budget model."""

from pydantic import PositiveInt
from pydantic.fields import Field

from app.pkg.models.base import BaseModel
from app.pkg.settings import settings

__all__ = ["OracleBudget"]


class OracleBudget(BaseModel):
    """Oracles refuse instances exceeding the budget rather than approximating."""

    max_decompressed_length: PositiveInt = Field(
        default_factory=lambda: settings.ORACLE.MAX_DECOMPRESSED_LENGTH,
        description="Longest value an oracle decompresses.",
        examples=[100_000],
    )
