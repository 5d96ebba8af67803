"""Phase engine for fully compressed pattern matching and equality.

Every phase works on the letters present when it starts: it fixes the
pattern ends (matching only), compresses blocks, then non-crossing and
crossing pairs, and finally tidies the grammar. Pattern and text shrink
by a constant factor per phase, so the loop ends after O(log M) phases
with a one-letter pattern whose text occurrences are the answer.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Callable
from dataclasses import dataclass, field

from app.pkg.logger import get_logger
from app.pkg.models.v1.app.enums import EndFixMode, Strategy, Which
from app.pkg.models.v1.app.match import Position
from app.pkg.models.v1.app.stats import PhaseStats
from app.pkg.models.v1.exceptions import (
    ContractViolation,
    EmptyPattern,
    InvalidSlpError,
)
from app.pkg.settings import settings
from app.pkg.slp.core import (
    MAX_LENGTH,
    Item,
    Ref,
    Run,
    Slp,
    compute_meta,
    eval_bounded,
    letter_at,
    live_letters,
    renumber_alphabet,
    validate,
)
from app.pkg.slp.endfix import fix_ends_slp, plan_endfix
from app.pkg.slp.recompress import (
    compress_blocks,
    compress_crossing_binary,
    compress_crossing_greedy,
    compress_noncrossing,
    merge_runs,
    pattern_block_caps,
    remove_crossing_blocks,
    scan_pairs,
)

__all__ = [
    "PhaseEngine",
    "OccurrenceSet",
    "fcpm",
    "equal_slp",
    "count",
    "position",
    "enumerate_positions",
    "phase_limit",
]

logger = get_logger(__name__)

TraceHook = Callable[[PhaseStats], None]


def phase_limit(pattern_length: int) -> int:
    """Phases allowed before the engine reports a broken invariant."""
    return int(64 * math.log2(max(pattern_length, 2))) + 16


def prune(slp: Slp) -> Slp:
    """Drop references to empty nonterminals and clear unreachable rules."""
    meta = compute_meta(slp)
    for nt, body in enumerate(slp.rules):
        if any(isinstance(item, Ref) and meta[item.nt].length == 0 for item in body):
            slp.rules[nt] = [
                item for item in body if not (isinstance(item, Ref) and meta[item.nt].length == 0)
            ]
    reachable = slp.reachable()
    for nt in range(len(slp.rules)):
        if not reachable[nt]:
            slp.rules[nt] = []
    return slp


def _prepare(slp: Slp) -> Slp:
    report = validate(slp)
    if not report.valid:
        raise InvalidSlpError(report)
    work = slp.copy()
    meta = compute_meta(work)
    text = [Ref(work.text_axiom)] if meta[work.text_axiom].length else []
    pattern = [Ref(work.pattern_axiom)] if meta[work.pattern_axiom].length else []
    work.text_axiom = work.add_rule(text)
    work.pattern_axiom = work.add_rule(pattern)
    return renumber_alphabet(prune(work))


@dataclass
class PhaseEngine:
    """Runs phases on a private copy of an instance.

    With ``fix_ends`` off the phases are those of the equality test.
    """

    slp: Slp
    strategy: Strategy = Strategy.GREEDY
    fix_ends: bool = True
    trace: TraceHook | None = None
    debug: bool = False
    phases: list[PhaseStats] = field(default_factory=list)
    text_length: int = 0
    text_weight: int = 0
    pattern_length: int = 0
    reference_count: int | None = None

    @classmethod
    def start(
        cls,
        slp: Slp,
        strategy: Strategy | str | None = None,
        fix_ends: bool = True,
        trace: TraceHook | None = None,
        debug: bool | None = None,
    ) -> PhaseEngine:
        work = _prepare(slp)
        meta = compute_meta(work)
        engine = cls(
            slp=work,
            strategy=Strategy(strategy or settings.ENGINE.STRATEGY),
            fix_ends=fix_ends,
            trace=trace,
            debug=settings.ENGINE.DEBUG_CHECKS if debug is None else debug,
            text_length=meta[work.text_axiom].length,
            text_weight=meta[work.text_axiom].weight,
            pattern_length=meta[work.pattern_axiom].length,
        )
        if engine.debug:
            engine.reference_count = engine._current_count()
        return engine

    @property
    def limit(self) -> int:
        return phase_limit(self.pattern_length)

    def lengths(self) -> tuple[int, int]:
        meta = compute_meta(self.slp)
        return meta[self.slp.pattern_axiom].length, meta[self.slp.text_axiom].length

    def _current_count(self) -> int | None:
        if self.text_length > settings.ENGINE.DEBUG_CHECK_LIMIT:
            return None
        text = eval_bounded(self.slp, self.slp.text_axiom, settings.ENGINE.DEBUG_CHECK_LIMIT)
        pattern = eval_bounded(self.slp, self.slp.pattern_axiom, settings.ENGINE.DEBUG_CHECK_LIMIT)
        if not isinstance(text, list) or not isinstance(pattern, list) or not pattern:
            return None
        size = len(pattern)
        return sum(1 for i in range(len(text) - size + 1) if text[i : i + size] == pattern)

    def _check(self, stage: str) -> None:
        meta = compute_meta(self.slp)
        weight = meta[self.slp.text_axiom].weight
        total = weight + self.slp.stripped_prefix_weight + self.slp.stripped_suffix_weight
        if total != self.text_weight and self.text_weight < MAX_LENGTH:
            raise ContractViolation(f"text weight {total} != {self.text_weight} after {stage}")
        if self.fix_ends and self.reference_count is not None:
            found = self._current_count()
            if found is not None and found != self.reference_count:
                raise ContractViolation(
                    f"{found} occurrences after {stage}, expected {self.reference_count}",
                )

    def run_phase(self) -> PhaseStats:
        if len(self.phases) >= self.limit:
            raise ContractViolation(f"no result after {len(self.phases)} phases")
        slp = self.slp
        pattern_length, text_length = self.lengths()
        counters: Counter = Counter()
        fresh_from = slp.symbols.next_id
        stats = PhaseStats(
            phase=len(self.phases),
            pattern_length=pattern_length,
            text_length=text_length,
            grammar_size=slp.grammar_size,
            alphabet_size=len(live_letters(slp)),
        )

        power = False
        if self.fix_ends:
            plan = plan_endfix(slp)
            fix_ends_slp(slp, plan, counters)
            power = plan.mode == EndFixMode.PATTERN_IS_POWER
            if self.debug:
                self._check("end fixing")

        if not power:
            eligible = fresh_from.__gt__
            remove_crossing_blocks(slp, counters=counters)
            stats.blocklen = compress_blocks(slp, pattern_block_caps(slp), eligible, counters)

            scan = scan_pairs(slp)
            compress_noncrossing(
                slp,
                [r for r in scan.noncrossing if r.a < fresh_from and r.b < fresh_from],
                counters,
            )
            crossing = {(a, b) for a, b in scan.crossing if a < fresh_from and b < fresh_from}
            if self.strategy == Strategy.BINARY:
                compress_crossing_binary(slp, crossing, counters)
            else:
                compress_crossing_greedy(slp, crossing, counters)

        renumber_alphabet(merge_runs(prune(slp)))
        if self.debug:
            self._check(f"phase {stats.phase}")

        stats.letters_introduced = counters["popped"]
        stats.pairs_compressed = counters["pairs"]
        stats.blocks_compressed = counters["blocks"]
        self.phases.append(stats)
        logger.debug("Phase done.", extra=stats.to_dict())
        if self.trace is not None:
            self.trace(stats)
        return stats


@dataclass
class OccurrenceSet:
    """Final state of a matching run.

    The text occurrences of ``hit_letter`` in ``final_slp`` are the
    pattern occurrences of the input; ``hit_letter`` is ``None`` when
    there are none.
    """

    final_slp: Slp
    hit_letter: int | None
    phases: list[PhaseStats]
    _hits: list[int] | None = field(default=None, repr=False)
    _weights: list[int] | None = field(default=None, repr=False)

    def _tables(self) -> tuple[list[int], list[int]]:
        if self._hits is None:
            hits: list[int] = []
            weights: list[int] = []
            symbols = self.final_slp.symbols
            for body in self.final_slp.rules:
                found = mass = 0
                for item in body:
                    if isinstance(item, Ref):
                        found += hits[item.nt]
                        mass += weights[item.nt]
                    elif isinstance(item, Run):
                        found += item.exponent if item.letter == self.hit_letter else 0
                        mass += item.exponent * symbols.weight(item.letter)
                    else:
                        found += item == self.hit_letter
                        mass += symbols.weight(item)
                hits.append(found)
                weights.append(mass)
            self._hits, self._weights = hits, weights
        return self._hits, self._weights

    def count(self) -> int:
        return count(self)

    def position(self, which: Which | str) -> Position | None:
        return position(self, which)

    def enumerate_positions(self, limit: int) -> list[int]:
        return enumerate_positions(self, limit)


def _position(value: int) -> Position:
    return Position(value=min(value, MAX_LENGTH), saturated=value >= MAX_LENGTH)


def count(occurrences: OccurrenceSet) -> int:
    """Number of occurrences; exact, the caller saturates for display."""
    if occurrences.hit_letter is None:
        return 0
    hits, _ = occurrences._tables()
    return hits[occurrences.final_slp.text_axiom]


def position(occurrences: OccurrenceSet, which: Which | str) -> Position | None:
    """First or last occurrence position, 1-based."""
    if count(occurrences) == 0:
        return None
    which = Which(which)
    hits, weights = occurrences._tables()
    slp = occurrences.final_slp
    hit = occurrences.hit_letter
    symbols = slp.symbols
    from_end = which == Which.LAST
    skipped = 0
    rule = slp.text_axiom
    while True:
        body = slp.rules[rule]
        for item in reversed(body) if from_end else body:
            if isinstance(item, Ref):
                if hits[item.nt]:
                    rule = item.nt
                    break
                skipped += weights[item.nt]
            elif _is_hit(item, hit):
                if from_end:
                    total = weights[slp.text_axiom]
                    skipped = total - skipped - symbols.weight(hit)
                return _position(slp.stripped_prefix_weight + skipped + 1)
            else:
                skipped += _item_weight(item, symbols.weights)
        else:
            raise ContractViolation("occurrence count and derivation disagree")


def _is_hit(item: Item, hit: int | None) -> bool:
    return (item.letter if isinstance(item, Run) else item) == hit


def _item_weight(item: Item, weights: list[int]) -> int:
    if isinstance(item, Run):
        return item.exponent * weights[item.letter]
    return weights[item]


def enumerate_positions(occurrences: OccurrenceSet, limit: int) -> list[int]:
    """Leading ``limit`` positions in increasing order, 1-based."""
    if limit <= 0 or count(occurrences) == 0:
        return []
    hits, weights = occurrences._tables()
    slp = occurrences.final_slp
    hit = occurrences.hit_letter
    step = slp.symbols.weight(hit)
    base = slp.stripped_prefix_weight + 1
    offset = 0
    out: list[int] = []
    stack = [[slp.text_axiom, 0]]
    while stack and len(out) < limit:
        frame = stack[-1]
        body = slp.rules[frame[0]]
        if frame[1] == len(body):
            stack.pop()
            continue
        item = body[frame[1]]
        frame[1] += 1
        if isinstance(item, Ref):
            if hits[item.nt]:
                stack.append([item.nt, 0])
            else:
                offset += weights[item.nt]
            continue
        if _is_hit(item, hit):
            times = item.exponent if isinstance(item, Run) else 1
            out.extend(base + offset + j * step for j in range(min(times, limit - len(out))))
        offset += _item_weight(item, slp.symbols.weights)
    return [min(value, MAX_LENGTH) for value in out]


def fcpm(
    slp: Slp,
    strategy: Strategy | str | None = None,
    trace: TraceHook | None = None,
    debug: bool | None = None,
) -> OccurrenceSet:
    """Find the occurrences of the pattern axiom's value in the text axiom's value."""
    engine = PhaseEngine.start(slp, strategy, fix_ends=True, trace=trace, debug=debug)
    if engine.pattern_length == 0:
        raise EmptyPattern()
    while True:
        pattern_length, text_length = engine.lengths()
        if pattern_length == 1:
            meta = compute_meta(engine.slp)
            hit = letter_at(engine.slp, engine.slp.pattern_axiom, 1, meta)
            break
        if pattern_length > text_length:
            hit = None
            break
        engine.run_phase()
    logger.info(
        "Matching finished.",
        extra={"phases": len(engine.phases), "text_length": engine.text_length},
    )
    return OccurrenceSet(engine.slp, hit, engine.phases)


def equal_slp(
    slp: Slp,
    strategy: Strategy | str | None = None,
    trace: TraceHook | None = None,
) -> bool:
    """Whether the text and pattern axioms derive the same string."""
    report = validate(slp)
    if not report.valid:
        raise InvalidSlpError(report)
    if slp.text_axiom == slp.pattern_axiom:
        return True
    engine = PhaseEngine.start(slp, strategy, fix_ends=False, trace=trace, debug=False)
    while True:
        pattern_length, text_length = engine.lengths()
        if pattern_length != text_length:
            return False
        if pattern_length <= 1:
            work = engine.slp
            return eval_bounded(work, work.pattern_axiom, 1) == eval_bounded(work, work.text_axiom, 1)
        engine.run_phase()
