from app import create_app
from app.configuration import __containers__
from app.internal.services import Services
from app.internal.services.v1 import BenchService, MatchService, SlpService


def test_wiring_reuses_containers():
    create_app()
    first = __containers__.wired_containers[Services]
    create_app()
    assert __containers__.wired_containers[Services] is first


def test_services_resolve():
    create_app()
    services = __containers__.wired_containers[Services].v1
    assert isinstance(services.slp_service(), SlpService)
    assert isinstance(services.match_service(), MatchService)
    assert isinstance(services.bench_service(), BenchService)
