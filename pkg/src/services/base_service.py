from loguru import logger

from src.core.config import Settings, get_settings
from src.exceptions.graph_exceptions import TooLargeError
from src.models.graph_model import Graph


class BaseService:
    """Shared settings access and size guards for the graph services."""

    def __init__(self, settings: Settings | None = None):
        self.settings = settings or get_settings()

    def ensure_size(self, g: Graph, limit: int | None = None, operation: str = "operation") -> None:
        """
        Reject graphs above a solver limit.

        Raises:
            TooLargeError: If g has more vertices than the limit (default MAX_N)
        """
        self.ensure_order(g.n, limit, operation)

    def ensure_order(self, n: int, limit: int | None = None, operation: str = "operation") -> None:
        """Same guard as ensure_size, for a graph that is yet to be built."""
        cap = self.settings.MAX_N if limit is None else limit
        if n > cap:
            logger.warning(f"{operation} refused a graph with {n} vertices (limit {cap})")
            raise TooLargeError(
                f"{operation} is limited to {cap} vertices, got {n}",
                details={"n": n, "limit": cap, "operation": operation},
            )
