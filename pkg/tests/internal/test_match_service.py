import pytest

from app.internal.services.v1 import MatchService
from app.pkg.models import v1 as models
from app.pkg.slp.core import MAX_LENGTH


@pytest.mark.parametrize(
    "name",
    ["ababa_baba.slp", "aaab_aab.slp", "ababa_bab.slp", "fibonacci7_aba.slp"],
)
def test_explicit_report_matches_engine(load_instance, name: str):
    service = MatchService()
    query = models.MatchQuery(positions=10)
    engine = service.match(load_instance(name), query)
    explicit = service.match(load_instance(name), query.model_copy(update={"explicit": True}))
    assert explicit.count == engine.count
    assert explicit.count_saturated == engine.count_saturated
    assert explicit.first == engine.first
    assert explicit.last == engine.last
    assert explicit.positions == engine.positions


def test_counts_saturate_on_both_paths():
    report = MatchService()._finish(MAX_LENGTH + 5, first=models.Position(value=1))
    assert report.count == MAX_LENGTH
    assert report.count_saturated
    assert report.render(models.MatchQuery(count=True)) == [f"count=>={MAX_LENGTH}"]
