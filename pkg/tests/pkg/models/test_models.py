import json

import pytest

from app.internal.pkg.middlewares.handle_cli_exceptions import handle_cli_exceptions
from app.pkg.models import v1 as models
from app.pkg.models.base import BaseSLPException
from app.pkg.models.v1.exceptions import (
    ContractViolation,
    InvalidSlpError,
    ParameterOutOfRange,
    SlpSyntaxError,
)

SATURATED = 2**63 - 1


@pytest.fixture
def report() -> models.MatchReport:
    return models.MatchReport(
        count=4,
        first=models.Position(value=1),
        last=models.Position(value=9),
        positions=[1, 4],
    )


@pytest.mark.parametrize(
    "query, lines",
    [
        (models.MatchQuery(), ["count=4 first=1"]),
        (models.MatchQuery(count=True), ["count=4"]),
        (models.MatchQuery(last=True, count=True), ["count=4 last=9"]),
        (models.MatchQuery(positions=2), ["1 4"]),
        (models.MatchQuery(first=True, positions=2), ["first=1", "1 4"]),
    ],
)
def test_render(report: models.MatchReport, query: models.MatchQuery, lines: list[str]):
    assert report.render(query) == lines


def test_render_saturated():
    report = models.MatchReport(
        count=SATURATED,
        count_saturated=True,
        first=models.Position(value=SATURATED, saturated=True),
    )
    assert report.saturated
    assert report.render(models.MatchQuery()) == [f"count=>={SATURATED} first=>={SATURATED}"]


def test_render_without_occurrence():
    report = models.MatchReport(count=0)
    assert not report.saturated
    assert report.render(models.MatchQuery(last=True)) == ["last=none"]


@pytest.mark.parametrize(
    "model",
    [models.PhaseStats, models.BlockLenStats, models.MatchReport, models.Position],
)
def test_factory(model):
    instance = model.factory().build()
    assert isinstance(instance, model)
    assert json.loads(instance.to_json_line()) == instance.to_dict()


def test_blocklen_stats_merge():
    merged = models.BlockLenStats(commons=2, max_offset=5, grammar_size=10).merge(
        models.BlockLenStats(commons=3, max_offset=1, grammar_size=40),
    )
    assert (merged.commons, merged.max_offset, merged.grammar_size) == (5, 5, 40)


def test_violation_text():
    violation = models.Violation(rule=3, code="forward reference", detail="references 4")
    assert str(violation) == "rule 3: forward reference (references 4)"
    report = models.ValidationReport(violations=[violation], rules=5)
    assert not report.valid
    assert InvalidSlpError(report).message == str(violation)


class TestExceptions:
    def test_default_message(self):
        assert ParameterOutOfRange().message == "Parameter out of range."

    def test_dict_message(self):
        assert BaseSLPException({"rule": 1, "letter": 2}).message == "rule=1, letter=2"

    def test_syntax_error_line(self):
        error = SlpSyntaxError("bad item", 7)
        assert error.line == 7
        assert error.message == "line 7: bad item"


class TestHandleCliExceptions:
    def test_passes_exit_code(self):
        assert handle_cli_exceptions(lambda: 0)() == 0

    def test_library_error(self, capsys):
        def command() -> int:
            raise ParameterOutOfRange("size must be positive")

        assert handle_cli_exceptions(command)() == 2
        assert "error: size must be positive" in capsys.readouterr().err

    def test_unexpected_error(self, capsys):
        def command() -> int:
            raise RuntimeError("boom")

        assert handle_cli_exceptions(command)() == 3
        assert "internal error: boom" in capsys.readouterr().err

    def test_contract_violation_is_internal(self, capsys):
        def command() -> int:
            raise ContractViolation("block split")

        assert handle_cli_exceptions(command)() == 3
        assert "error: block split" in capsys.readouterr().err
