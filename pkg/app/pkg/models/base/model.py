"""Base model for all report models."""

from __future__ import annotations

from typing import Any, TypeVar

import pydantic
from polyfactory.factories.pydantic_factory import ModelFactory
from pydantic import ConfigDict

__all__ = ["BaseModel", "Model"]

Model = TypeVar("Model", bound="BaseModel")


class BaseModel(pydantic.BaseModel):
    """Base model for all report models."""

    model_config = ConfigDict(
        populate_by_name=True,
        use_enum_values=True,
        validate_assignment=True,
        str_strip_whitespace=True,
    )

    def to_dict(self, **kwargs) -> dict[Any, Any]:
        """Make a json-compatible dict from the model.

        Args:
            **kwargs:
                Optional arguments passed to ``model_dump``.

        Examples:
            ::

                >>> from app.pkg.models import v1 as models
                >>> stats = models.PhaseStats(phase=0, pattern_length=4)
                >>> stats.to_dict()["pattern_length"]
                4

        Returns:
            Dict object.
        """

        return self.model_dump(mode="json", **kwargs)

    def to_json_line(self) -> str:
        """Serialize the model as one JSON line."""

        return self.model_dump_json()

    @classmethod
    def factory(cls):
        """Create random data for model.

        Examples:
            When you need to create a random model, just use factory function:
                >>> from app.pkg.models import v1 as models
                >>> stats = models.PhaseStats.factory().build()

            If you need to add specific value, use this construction:
                >>> stats = models.PhaseStats.factory().build(phase=3)
        """

        class Factory(ModelFactory[cls]):
            __use_defaults__ = False

        return Factory
