"""Benchmark harness: generated families, phase statistics, baseline and referee."""

from __future__ import annotations

import time
from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
from logging import Logger
from pathlib import Path

import pydantic

from app.pkg.logger import get_logger
from app.pkg.models import v1 as models
from app.pkg.models.v1.exceptions import BenchSpecError, OracleBudgetExceeded
from app.pkg.settings import settings
from app.pkg.slp.core import MAX_LENGTH, Slp, TooLong, compute_meta, eval_bounded
from app.pkg.slp.driver import fcpm
from app.pkg.slp.generators import gen_family_instance, gen_instance
from app.pkg.slp.oracle import oracle_fcpm, scan_match

__all__ = ["BenchService", "build_instance", "run_instance"]

logger = get_logger(__name__)


def build_instance(instance: models.BenchInstance) -> Slp:
    family = models.BenchFamilyName(instance.family)
    if family == models.BenchFamilyName.RANDOM:
        return gen_instance(
            instance.seed,
            instance.rules,
            instance.alphabet,
            instance.pattern_length,
            instance.max_text_length,
        )
    if family == models.BenchFamilyName.POWER:
        return gen_family_instance(str(family), instance.size, max(1, instance.size // 3))
    return gen_family_instance(
        str(family),
        instance.size,
        max(1, instance.size - instance.pattern_gap),
    )


def _baseline(slp: Slp, text_length: int, budget: int) -> models.BaselineResult:
    """Decompress and search, when the text fits ``budget``."""
    if text_length > budget:
        return models.BaselineResult(status="refused")
    start = time.perf_counter()
    text = eval_bounded(slp, slp.text_axiom, budget)
    pattern = eval_bounded(slp, slp.pattern_axiom, budget)
    if isinstance(text, TooLong) or isinstance(pattern, TooLong):
        return models.BaselineResult(status="refused")
    if len(slp.symbols) <= 256:
        haystack, needle = bytes(text), bytes(pattern)
        found = 0
        at = haystack.find(needle)
        while at != -1:
            found += 1
            at = haystack.find(needle, at + 1)
    else:
        found = len(scan_match(text, pattern))
    return models.BaselineResult(
        status="ok",
        count=found,
        seconds=time.perf_counter() - start,
    )


def _referee(slp: Slp, enabled: bool, count: int, first: int | None, last: int | None) -> str:
    if not enabled:
        return "skipped"
    try:
        positions = oracle_fcpm(slp)
    except OracleBudgetExceeded:
        return "skipped"
    expected = (len(positions), positions[0] if positions else None, positions[-1] if positions else None)
    return "pass" if expected == (count, first, last) else "fail"


def run_instance(instance: models.BenchInstance) -> models.BenchRecord:
    """Run one instance; module level so worker processes can pickle it."""
    slp = build_instance(instance)
    meta = compute_meta(slp)
    text_length = meta[slp.text_axiom].length
    pattern_length = meta[slp.pattern_axiom].length

    start = time.perf_counter()
    occurrences = fcpm(slp, instance.strategy)
    total = occurrences.count()
    first = occurrences.position(models.Which.FIRST)
    last = occurrences.position(models.Which.LAST)
    seconds = time.perf_counter() - start

    phases = occurrences.phases
    max_grammar = max([stats.grammar_size for stats in phases], default=slp.grammar_size)
    max_alphabet = max([stats.alphabet_size for stats in phases], default=len(slp.symbols))
    first_value = None if first is None else first.value
    last_value = None if last is None else last.value
    return models.BenchRecord(
        instance_id=instance.instance_id,
        family=instance.family,
        size=instance.size,
        seed=instance.seed,
        strategy=instance.strategy,
        text_length=text_length,
        pattern_length=pattern_length,
        rules=len(slp.rules),
        seconds=seconds,
        phases=len(phases),
        max_grammar_size=max_grammar,
        max_alphabet_size=max_alphabet,
        grammar_ratio=max_grammar / len(slp.rules),
        count=min(total, MAX_LENGTH),
        count_saturated=total >= MAX_LENGTH,
        first=first_value,
        last=last_value,
        blocklen=[stats.blocklen for stats in phases],
        baseline=_baseline(slp, text_length, instance.baseline_budget),
        oracle=_referee(slp, instance.oracle, total, first_value, last_value),
    )


class BenchService:
    """Expands a bench spec into instances and runs them, in order of id."""

    __logger: Logger = get_logger(__name__)

    def load_spec(self, path: str | Path) -> models.BenchSpec:
        try:
            return models.BenchSpec.model_validate_json(Path(path).read_text(encoding="utf-8"))
        except (OSError, pydantic.ValidationError) as exc:
            self.__logger.exception("Bench spec rejected.", extra={"context": {"path": str(path)}})
            raise BenchSpecError(exc) from exc

    @staticmethod
    def expand(spec: models.BenchSpec) -> list[models.BenchInstance]:
        budget = spec.baseline_budget or settings.BENCH.BASELINE_BUDGET
        instances: list[models.BenchInstance] = []
        for family in spec.families:
            common = {
                "family": family.family,
                "pattern_gap": family.pattern_gap,
                "rules": family.rules,
                "alphabet": family.alphabet,
                "pattern_length": family.pattern_length,
                "max_text_length": family.max_text_length,
                "strategy": family.strategy,
                "baseline_budget": budget,
                "oracle": spec.oracle,
            }
            if family.family == models.BenchFamilyName.RANDOM:
                variants = [{"seed": seed} for seed in family.seeds]
            else:
                variants = [{"size": size} for size in family.sizes]
            for variant in variants:
                instances.append(
                    models.BenchInstance(instance_id=len(instances), **common, **variant),
                )
        return instances

    def run(self, spec: models.BenchSpec) -> Iterator[models.BenchRecord]:
        instances = self.expand(spec)
        workers = spec.workers or settings.BENCH.WORKERS
        self.__logger.info(
            "Bench started.",
            extra={"context": {"instances": len(instances), "workers": workers}},
        )
        if workers == 1:
            yield from map(run_instance, instances)
            return
        with ProcessPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(run_instance, instances)
