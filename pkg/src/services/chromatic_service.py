from collections.abc import Iterable, Sequence

from loguru import logger

from src.core.config import Settings
from src.exceptions.graph_exceptions import AlphaTooLargeError, BaseGraphError, OutOfRangeError
from src.models.chromatic_model import ChiCertificate
from src.models.graph_model import Graph, iter_bits
from src.services.base_service import BaseService
from src.services.graph_service import GraphService
from src.services.matching_service import MatchingService


class ChromaticService(BaseService):
    """
    Chromatic number of graphs with independence number at most two.

    With alpha(G) <= 2 every colour class has at most two vertices, and a class
    of two is an edge of the complement, so chi(G) = n - nu(complement).
    """

    def __init__(self, settings: Settings | None = None):
        super().__init__(settings)
        self.graph_service = GraphService(self.settings)
        self.matching_service = MatchingService(self.settings)

    def _alpha2_complement(self, g: Graph) -> Graph:
        """
        Raises:
            AlphaTooLargeError: If g has three pairwise non-adjacent vertices
        """
        self.ensure_size(g, operation="chi_alpha2")
        complement = self.graph_service.complement(g)
        if not self.graph_service.is_triangle_free(complement):
            raise AlphaTooLargeError(
                "Graph has independence number at least 3", details={"n": g.n}
            )
        return complement

    def chi_value(self, g: Graph) -> int:
        """chi(G) for alpha(G) <= 2 without building a certificate."""
        complement = self._alpha2_complement(g)
        return g.n - self.matching_service.maximum_matching(complement).nu

    def chi_alpha2(self, g: Graph) -> ChiCertificate:
        """
        Exact chi(G) with its witness set and matching-derived colouring.

        Raises:
            AlphaTooLargeError: If alpha(G) >= 3
            BaseGraphError: If the witness and the matching disagree
        """
        complement = self._alpha2_complement(g)
        matching = self.matching_service.maximum_matching(complement)
        witness = self.matching_service.maximal_witness_set(complement)
        certificate = ChiCertificate(
            n=g.n, chi=g.n - matching.nu, witness=witness, matching=matching
        )
        if certificate.lower_bound != certificate.chi:
            logger.error(f"Witness bound {certificate.lower_bound} != chi {certificate.chi}")
            raise BaseGraphError(
                "Witness set and matching disagree",
                details={"chi": certificate.chi, "bound": certificate.lower_bound},
            )
        return certificate

    def chi_lower_bound(self, g: Graph, p: Iterable[int]) -> int:
        """
        (n + o(complement - p) - |p|) / 2, a lower bound on chi(G) for any p.

        Raises:
            AlphaTooLargeError: If alpha(G) >= 3
            OutOfRangeError: If p names a vertex outside the graph
        """
        members = frozenset(p)
        if any(not 0 <= v < g.n for v in members):
            raise OutOfRangeError(f"Witness set {sorted(members)} leaves 0..{g.n - 1}")
        complement = self._alpha2_complement(g)
        odd = self.matching_service.odd_components(complement, members)
        return (g.n + odd - len(members)) // 2

    def verify_coloring(self, g: Graph, classes: Sequence[Iterable[int]]) -> bool:
        seen: set[int] = set()
        for color_class in classes:
            members = set(color_class)
            if members & seen or not self.graph_service.is_independent(g, members):
                return False
            seen |= members
        return seen == set(range(g.n))

    def chi_bruteforce(self, g: Graph) -> int:
        """
        Exact chromatic number of any graph by DSATUR branch and bound.

        Raises:
            TooLargeError: If g exceeds ORACLE_MAX_N
        """
        self.ensure_size(g, self.settings.ORACLE_MAX_N, operation="chi_bruteforce")
        n = g.n
        if n == 0:
            return 0
        lower = self.graph_service.clique_number(g)
        colors = [-1] * n
        best = n

        def pick() -> int:
            chosen, key = -1, (-1, -1)
            for v in range(n):
                if colors[v] >= 0:
                    continue
                neighbours = list(iter_bits(g.rows[v]))
                saturation = len({colors[u] for u in neighbours if colors[u] >= 0})
                free_degree = sum(1 for u in neighbours if colors[u] < 0)
                if (saturation, free_degree) > key:
                    chosen, key = v, (saturation, free_degree)
            return chosen

        def solve(colored: int, used: int) -> None:
            nonlocal best
            if used >= best:
                return
            if colored == n:
                best = used
                return
            v = pick()
            forbidden = {colors[u] for u in iter_bits(g.rows[v])}
            for c in range(used):
                if c not in forbidden:
                    colors[v] = c
                    solve(colored + 1, used)
                    colors[v] = -1
                    if best == lower:
                        return
            if used + 1 < best:
                colors[v] = used
                solve(colored + 1, used + 1)
                colors[v] = -1

        solve(0, 0)
        return best
