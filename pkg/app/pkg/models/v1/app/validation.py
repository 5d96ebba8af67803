"""Validation report models."""

from pydantic.fields import Field

from app.pkg.models.base import BaseEnum, BaseModel

__all__ = ["ViolationCode", "Violation", "ValidationReport"]


class ViolationCode(str, BaseEnum):
    TOO_MANY_NONTERMINALS = "too many nonterminals"
    FORWARD_REFERENCE = "forward reference"
    UNKNOWN_NONTERMINAL = "unknown nonterminal"
    UNKNOWN_LETTER = "unknown letter"
    DEGENERATE_RUN = "degenerate run"
    EMPTY_REFERENCED = "empty nonterminal referenced"
    UNKNOWN_AXIOM = "unknown axiom"
    PATTERN_AXIOM_REFERENCED = "pattern axiom referenced"


class ValidationFields:
    """Validation fields."""

    rule: int | None = Field(
        default=None,
        description="Index of the offending rule, none for global violations.",
        examples=[2, None],
    )
    code: ViolationCode = Field(
        description="Violated condition.",
        examples=["forward reference"],
    )
    detail: str = Field(
        default="",
        description="Human readable explanation.",
        examples=["rule 2 references nonterminal 3"],
    )
    violations: list["Violation"] = Field(
        default_factory=list,
        description="Every violated condition.",
    )
    chomsky_normal_form: bool = Field(
        default=False,
        description="Every rule is a single letter or exactly two nonterminals.",
        examples=[True],
    )
    rules: int = Field(
        default=0,
        description="Number of rules inspected.",
        examples=[7],
    )


class Violation(BaseModel):
    """One violated condition."""

    rule: int | None = ValidationFields.rule
    code: ViolationCode = ValidationFields.code
    detail: str = ValidationFields.detail

    def __str__(self) -> str:
        where = "" if self.rule is None else f"rule {self.rule}: "
        return f"{where}{self.code}" + (f" ({self.detail})" if self.detail else "")


class ValidationReport(BaseModel):
    """Result of :func:`app.pkg.slp.core.validate`."""

    violations: list[Violation] = ValidationFields.violations
    chomsky_normal_form: bool = ValidationFields.chomsky_normal_form
    rules: int = ValidationFields.rules

    @property
    def valid(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {str(v.code) for v in self.violations}
