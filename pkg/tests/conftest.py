import pytest

from src.core.config import Settings
from src.models.graph_model import Graph
from src.repositories.graph_repository import GraphRepository
from src.repositories.report_repository import ReportRepository
from src.services.chromatic_service import ChromaticService
from src.services.graph_builders import circulant_graph, cycle_graph
from src.services.graph_service import GraphService
from src.services.lab_service import LabService
from src.services.matching_service import MatchingService
from src.services.splitter_service import SplitterService


@pytest.fixture
def settings(tmp_path) -> Settings:
    return Settings(REPORT_DIR=tmp_path / "reports", LOG_LEVEL="DEBUG")


@pytest.fixture
def graph_service(settings) -> GraphService:
    return GraphService(settings)


@pytest.fixture
def matching_service(settings) -> MatchingService:
    return MatchingService(settings)


@pytest.fixture
def chromatic_service(settings) -> ChromaticService:
    return ChromaticService(settings)


@pytest.fixture
def splitter(settings) -> SplitterService:
    return SplitterService(settings)


@pytest.fixture
def lab(settings) -> LabService:
    return LabService(settings)


@pytest.fixture
def graph_repository(settings) -> GraphRepository:
    return GraphRepository(settings)


@pytest.fixture
def report_repository(settings) -> ReportRepository:
    return ReportRepository(settings)


@pytest.fixture
def c5() -> Graph:
    return cycle_graph(5)


@pytest.fixture
def circulant13(graph_service) -> Graph:
    """Complement of the triangle-free circulant C13(1, 5): alpha 2, omega 4, chi 7."""
    return graph_service.complement(circulant_graph(13, [1, 5]))
