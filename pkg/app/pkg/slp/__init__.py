"""Recompression on straight-line programs.

Modules are layered bottom-up: :mod:`.core` (grammar model), :mod:`.codec`
and :mod:`.generators` (input), :mod:`.explicit` (uncompressed reference
algorithms), :mod:`.blocklen`, :mod:`.recompress` and :mod:`.endfix`
(grammar primitives), :mod:`.driver` (phase engine) and :mod:`.oracle`
(brute-force referees).
"""

# ruff: noqa

from app.pkg.slp.codec import parse_slp, parse_slp_file, serialize_slp
from app.pkg.slp.core import (
    MAX_LENGTH,
    Ref,
    Run,
    Slp,
    SymbolMeta,
    SymbolTable,
    TooLong,
    compute_meta,
    eval_bounded,
    renumber_alphabet,
    validate,
)
from app.pkg.slp.driver import (
    OccurrenceSet,
    PhaseEngine,
    count,
    enumerate_positions,
    equal_slp,
    fcpm,
    position,
)
