"""Benchmark spec and record models.

The JSON-lines schema of :class:`.BenchRecord` is documented in
``docs/bench.md``.
"""

from typing import Literal

from pydantic import PositiveInt, model_validator
from pydantic.fields import Field

from app.pkg.models.base import BaseEnum, BaseModel
from app.pkg.models.v1.app.enums import Strategy
from app.pkg.models.v1.app.stats import BlockLenStats

__all__ = [
    "BenchFamilyName",
    "BenchFamily",
    "BenchSpec",
    "BenchInstance",
    "BaselineResult",
    "BenchRecord",
]


class BenchFamilyName(str, BaseEnum):
    FIBONACCI = "fibonacci"
    THUE_MORSE = "thue-morse"
    POWER = "power"
    RANDOM = "random"


class BenchFamily(BaseModel):
    """One generator family and the parameters to sweep."""

    family: BenchFamilyName
    sizes: list[PositiveInt] = Field(
        default_factory=list,
        description="k for fibonacci/thue-morse, log2 of the text length for power.",
        examples=[[10, 20, 40, 80]],
    )
    pattern_gap: PositiveInt = Field(
        default=2,
        description="Pattern is the family member k - pattern_gap.",
    )
    seeds: list[int] = Field(default_factory=list, examples=[[1, 2, 3]])
    rules: PositiveInt = 40
    alphabet: PositiveInt = 3
    pattern_length: PositiveInt = 6
    max_text_length: PositiveInt = 5_000
    strategy: Strategy = Strategy.GREEDY

    @model_validator(mode="after")
    def check_parameters(self) -> "BenchFamily":
        if self.family == BenchFamilyName.RANDOM:
            if not self.seeds:
                raise ValueError("random family needs seeds")
        elif not self.sizes:
            raise ValueError(f"{self.family} family needs sizes")
        return self


class BenchSpec(BaseModel):
    """Content of the JSON file given to ``slp-fcpm bench``."""

    families: list[BenchFamily] = Field(min_length=1)
    workers: PositiveInt | None = Field(
        default=None,
        description="Process pool size, settings default when omitted.",
    )
    baseline_budget: PositiveInt | None = Field(
        default=None,
        description="Longest text the decompress-and-search baseline accepts.",
    )
    oracle: bool = Field(default=True, description="Referee instances within budget.")


class BenchInstance(BaseModel):
    """One concrete instance to run."""

    instance_id: int
    family: BenchFamilyName
    size: int | None = None
    seed: int | None = None
    pattern_gap: int = 2
    rules: int = 40
    alphabet: int = 3
    pattern_length: int = 6
    max_text_length: int = 5_000
    strategy: Strategy = Strategy.GREEDY
    baseline_budget: int = 100_000_000
    oracle: bool = True


class BaselineResult(BaseModel):
    status: Literal["ok", "refused"]
    count: int | None = None
    seconds: float | None = None


class BenchRecord(BaseModel):
    """One JSON line of the bench report."""

    instance_id: int
    family: BenchFamilyName
    size: int | None = None
    seed: int | None = None
    strategy: Strategy
    text_length: int
    pattern_length: int
    rules: int = Field(description="n + m, rules of the input instance.")
    seconds: float
    phases: int
    max_grammar_size: int
    max_alphabet_size: int
    grammar_ratio: float = Field(description="max |G| / (n + m).")
    count: int
    count_saturated: bool = False
    first: int | None = None
    last: int | None = None
    blocklen: list[BlockLenStats] = Field(default_factory=list)
    baseline: BaselineResult
    oracle: Literal["pass", "fail", "skipped"]
