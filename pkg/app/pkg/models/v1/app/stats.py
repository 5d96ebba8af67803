"""Per-phase instrumentation models."""

from pydantic.fields import Field

from app.pkg.models.base import BaseModel

__all__ = ["BlockLenStats", "PhaseStats"]


class BlockLenStats(BaseModel):
    """Counters of the block-length machinery for one phase."""

    commons: int = Field(default=0, description="Common lengths created.")
    kept_commons: int = Field(default=0, description="Common lengths left after thinning.")
    offsets: int = Field(default=0, description="Block lengths that carry an offset.")
    max_offset: int = Field(default=0, description="Largest offset after thinning.")
    redirected_cost_bits: int = Field(
        default=0,
        description="Bits of all sorted common lengths.",
    )
    grammar_size: int = Field(default=0, description="|G| used as the thinning gap.")

    def merge(self, other: "BlockLenStats") -> "BlockLenStats":
        return BlockLenStats(
            commons=self.commons + other.commons,
            kept_commons=self.kept_commons + other.kept_commons,
            offsets=self.offsets + other.offsets,
            max_offset=max(self.max_offset, other.max_offset),
            redirected_cost_bits=self.redirected_cost_bits + other.redirected_cost_bits,
            grammar_size=max(self.grammar_size, other.grammar_size),
        )


class PhaseStats(BaseModel):
    """State of the instance at the start of one phase and work done in it."""

    phase: int = Field(description="Phase index, starting at 0.", examples=[0])
    pattern_length: int = Field(description="Pattern length in current letters.")
    text_length: int = Field(default=0, description="Text length in current letters.")
    grammar_size: int = Field(default=0, description="Total body length |G|.")
    alphabet_size: int = Field(default=0, description="Live letters |Σ|.")
    letters_introduced: int = Field(
        default=0,
        description="Letters popped into rule bodies during the phase.",
    )
    pairs_compressed: int = Field(default=0, description="Fresh letters made for pairs.")
    blocks_compressed: int = Field(default=0, description="Fresh letters made for blocks.")
    blocklen: BlockLenStats = Field(default_factory=BlockLenStats)
