"""Answering match and equality queries."""

from __future__ import annotations

from collections.abc import Callable
from logging import Logger

from app.pkg.logger import get_logger
from app.pkg.models import v1 as models
from app.pkg.slp.core import MAX_LENGTH, Slp
from app.pkg.slp.driver import OccurrenceSet, equal_slp, fcpm
from app.pkg.slp.explicit import spm_match
from app.pkg.slp.oracle import decompress

__all__ = ["MatchService"]


class MatchService:
    """Runs the phase engine, or the explicit variant, for one query."""

    __logger: Logger = get_logger(__name__)

    def match(
        self,
        slp: Slp,
        query: models.MatchQuery,
        trace: Callable[[models.PhaseStats], None] | None = None,
    ) -> models.MatchReport:
        if query.explicit:
            return self._match_explicit(slp, query)
        occurrences = fcpm(slp, query.strategy, trace=trace)
        return self._report(occurrences, query)

    def _report(self, occurrences: OccurrenceSet, query: models.MatchQuery) -> models.MatchReport:
        return self._finish(
            occurrences.count(),
            first=occurrences.position(models.Which.FIRST),
            last=occurrences.position(models.Which.LAST),
            positions=(
                occurrences.enumerate_positions(query.positions)
                if query.positions is not None
                else None
            ),
            phases=len(occurrences.phases),
        )

    def _match_explicit(self, slp: Slp, query: models.MatchQuery) -> models.MatchReport:
        text = decompress(slp, slp.text_axiom)
        pattern = decompress(slp, slp.pattern_axiom)
        found = spm_match(pattern, text)
        return self._finish(
            len(found),
            first=models.Position(value=found[0]) if found else None,
            last=models.Position(value=found[-1]) if found else None,
            positions=found[: query.positions] if query.positions is not None else None,
        )

    def _finish(self, total: int, **fields) -> models.MatchReport:
        """Build the report with ``total`` saturated at the reportable maximum."""
        report = models.MatchReport(
            count=min(total, MAX_LENGTH),
            count_saturated=total >= MAX_LENGTH,
            **fields,
        )
        if report.saturated:
            self.__logger.warning(
                "Answer saturated.",
                extra={"context": {"count": report.count}},
            )
        return report

    def equal(self, slp: Slp, strategy: models.Strategy | str | None = None) -> bool:
        return equal_slp(slp, strategy)
