"""Query and answer models for pattern matching."""

from pydantic import NonNegativeInt
from pydantic.fields import Field

from app.pkg.models.base import BaseModel
from app.pkg.models.v1.app.enums import Strategy

__all__ = ["Position", "MatchQuery", "MatchReport"]

SATURATED = 2**63 - 1


class Position(BaseModel):
    """1-based start position of an occurrence."""

    value: int = Field(description="Position, saturated at 2^63-1.", examples=[2])
    saturated: bool = Field(default=False, description="Value hit the cap.")

    def __str__(self) -> str:
        return f">={self.value}" if self.saturated else str(self.value)


class MatchQuery(BaseModel):
    """What the caller wants to know about the occurrences."""

    count: bool = False
    first: bool = False
    last: bool = False
    positions: NonNegativeInt | None = Field(
        default=None,
        description="Report up to this many leading positions.",
    )
    strategy: Strategy = Strategy.GREEDY
    trace: bool = False
    explicit: bool = False

    @property
    def wants_summary(self) -> bool:
        """Summary line is printed unless only positions were requested."""
        return self.count or self.first or self.last or self.positions is None

    @property
    def summary_fields(self) -> tuple[str, ...]:
        if not (self.count or self.first or self.last):
            return ("count", "first")
        return tuple(
            name for name in ("count", "first", "last") if getattr(self, name)
        )


class MatchReport(BaseModel):
    """Answers to a :class:`.MatchQuery`."""

    count: int = Field(description="Number of occurrences, saturated.", examples=[4])
    count_saturated: bool = False
    first: Position | None = None
    last: Position | None = None
    positions: list[int] | None = None
    phases: int = Field(default=0, description="Phases run by the engine.")

    @property
    def saturated(self) -> bool:
        return (
            self.count_saturated
            or (self.first is not None and self.first.saturated)
            or (self.last is not None and self.last.saturated)
        )

    def render(self, query: MatchQuery) -> list[str]:
        """Lines written to stdout for ``query``."""
        lines = []
        if query.wants_summary:
            parts = []
            for name in query.summary_fields:
                if name == "count":
                    value = f">={SATURATED}" if self.count_saturated else str(self.count)
                else:
                    position = getattr(self, name)
                    value = "none" if position is None else str(position)
                parts.append(f"{name}={value}")
            lines.append(" ".join(parts))
        if query.positions is not None:
            lines.append(" ".join(str(p) for p in self.positions or []))
        return lines
