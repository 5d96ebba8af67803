"""V1 service layer."""

from dependency_injector import containers, providers

from app.internal.services.v1.bench import BenchService
from app.internal.services.v1.match import MatchService
from app.internal.services.v1.slp import SlpService

__all__ = ["Services", "SlpService", "MatchService", "BenchService"]


class Services(containers.DeclarativeContainer):
    """Containers with services."""

    slp_service = providers.Factory(SlpService)
    match_service = providers.Factory(MatchService)
    bench_service = providers.Factory(BenchService)
