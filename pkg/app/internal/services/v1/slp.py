"""Loading, checking and inspecting SLP instances."""

from __future__ import annotations

from logging import Logger
from pathlib import Path

from app.pkg.logger import get_logger
from app.pkg.models import v1 as models
from app.pkg.models.v1.exceptions import (
    InvalidSlpError,
    OracleBudgetExceeded,
    ParameterOutOfRange,
)
from app.pkg.slp.codec import parse_slp_file, serialize_slp
from app.pkg.slp.core import Slp, TooLong, eval_bounded, validate
from app.pkg.slp.driver import PhaseEngine
from app.pkg.slp.generators import (
    from_texts_balanced,
    gen_fibonacci,
    gen_instance,
    gen_power,
    gen_random,
    gen_thue_morse,
    join_instances,
)
from app.pkg.slp.recompress import Partition, PairScan, pop, scan_pairs

__all__ = ["SlpService"]


class SlpService:
    """Reads instances from files or raw strings and runs debug steps on them."""

    __logger: Logger = get_logger(__name__)

    def load(
        self,
        text_path: str | Path | None = None,
        pattern_path: str | Path | None = None,
        text_raw: str | None = None,
        pattern_raw: str | None = None,
    ) -> Slp:
        """Build one instance from files or raw strings.

        With a single file both axioms come from it. With two files the
        text axiom comes from the first and the pattern axiom from the
        second; letter ids are shared.
        """
        if text_raw is not None or pattern_raw is not None:
            if text_raw is None or pattern_raw is None or text_path or pattern_path:
                raise ParameterOutOfRange("raw input needs both --text-raw and --pattern-raw")
            return from_texts_balanced(text_raw, pattern_raw)
        if text_path is None:
            raise ParameterOutOfRange("no input given")
        text = parse_slp_file(text_path)
        if pattern_path is None:
            return text
        return join_instances(text, parse_slp_file(pattern_path))

    def validate(self, slp: Slp) -> models.ValidationReport:
        return validate(slp)

    def require_valid(self, slp: Slp) -> Slp:
        report = validate(slp)
        if not report.valid:
            self.__logger.info(
                "Instance rejected.",
                extra={"context": {"violations": [str(v) for v in report.violations]}},
            )
            raise InvalidSlpError(report)
        return slp

    def decompress(self, slp: Slp, which: str, limit: int) -> str:
        self.require_valid(slp)
        axiom = slp.text_axiom if which == "text" else slp.pattern_axiom
        value = eval_bounded(slp, axiom, limit)
        if isinstance(value, TooLong):
            raise OracleBudgetExceeded(f"{which} has {value.length} letters, limit is {limit}")
        return slp.symbols.decode(value)

    def generate(
        self,
        family: str,
        size: int | None = None,
        seed: int | None = None,
        rules: int = 40,
        alphabet: int = 3,
        pattern_length: int = 6,
        max_text_length: int = 5_000,
    ) -> Slp:
        builders = {
            "fibonacci": lambda: gen_fibonacci(self._need(size, "size")),
            "thue-morse": lambda: gen_thue_morse(self._need(size, "size")),
            "power": lambda: gen_power(0, self._need(size, "size")),
            "random": lambda: gen_random(self._need(seed, "seed"), rules, alphabet),
            "instance": lambda: gen_instance(
                self._need(seed, "seed"),
                rules,
                alphabet,
                pattern_length,
                max_text_length,
            ),
        }
        if family not in builders:
            raise ParameterOutOfRange(f"unknown family {family!r}")
        return builders[family]()

    @staticmethod
    def _need(value: int | None, name: str) -> int:
        if value is None:
            raise ParameterOutOfRange(f"--{name} is required for this family")
        return value

    def scan(self, slp: Slp) -> PairScan:
        return scan_pairs(self.require_valid(slp))

    def pop(self, slp: Slp, left: list[int], right: list[int]) -> Slp:
        if both := set(left) & set(right):
            raise ParameterOutOfRange(f"letters on both sides: {sorted(both)}")
        work = self.require_valid(slp).copy()
        return pop(work, Partition(frozenset(left), frozenset(right)))

    def phase(
        self,
        slp: Slp,
        strategy: models.Strategy | str | None = None,
        fix_ends: bool = True,
    ) -> tuple[Slp, models.PhaseStats]:
        """One phase on a prepared copy; returns the grammar after it."""
        engine = PhaseEngine.start(slp, strategy, fix_ends=fix_ends)
        stats = engine.run_phase()
        return engine.slp, stats

    @staticmethod
    def dump(slp: Slp) -> str:
        return serialize_slp(slp, with_weights=True)
