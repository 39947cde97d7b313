from collections import deque
from collections.abc import Iterable

from loguru import logger

from src.core.config import Settings
from src.exceptions.graph_exceptions import BaseGraphError
from src.models.graph_model import Graph, iter_bits
from src.models.matching_model import GallaiEdmonds, Matching, WitnessSet
from src.services.base_service import BaseService
from src.services.graph_service import GraphService


class MatchingService(BaseService):
    """Maximum matching, Tutte-Berge deficiency and Gallai-Edmonds structure."""

    def __init__(self, settings: Settings | None = None):
        super().__init__(settings)
        self.graph_service = GraphService(self.settings)

    def maximum_matching(self, g: Graph) -> Matching:
        """
        Maximum cardinality matching by Edmonds' blossom algorithm.

        A greedy matching is grown one exposed root at a time; a root with no
        augmenting path never gets one later, so each root is searched once.
        """
        mate = [-1] * g.n
        for v in range(g.n):
            if mate[v] == -1:
                for u in iter_bits(g.rows[v]):
                    if mate[u] == -1:
                        mate[v], mate[u] = u, v
                        break
        for root in range(g.n):
            if mate[root] == -1:
                _augment_from(g, mate, root)
        return Matching(tuple((v, mate[v]) for v in range(g.n) if mate[v] > v))

    def tutte_berge_deficiency(self, g: Graph) -> int:
        return g.n - 2 * self.maximum_matching(g).nu

    def odd_components(self, g: Graph, p: Iterable[int] = ()) -> int:
        return self.graph_service.components(g, removed=p).odd_count

    def gallai_edmonds(self, g: Graph) -> GallaiEdmonds:
        """
        D is found by re-running the matching on every vertex-deleted subgraph.
        """
        nu = self.maximum_matching(g).nu
        d = frozenset(
            v
            for v in range(g.n)
            if self.maximum_matching(self.graph_service.delete(g, (v,)).graph).nu == nu
        )
        reach = 0
        for v in d:
            reach |= g.rows[v]
        a = frozenset(v for v in iter_bits(reach) if v not in d)
        c = frozenset(range(g.n)) - d - a
        return GallaiEdmonds(d=d, a=a, c=c)

    def maximal_witness_set(self, g: Graph) -> WitnessSet:
        """
        A deficiency-achieving P whose removal leaves only odd components.

        Starts from the Gallai-Edmonds set A. While g - P has an even component,
        its lowest vertex joins P: that component minus the vertex is odd in
        total, so the odd count rises by at least one and the value cannot drop.

        Raises:
            BaseGraphError: If the value does not reach the deficiency
        """
        deficiency = self.tutte_berge_deficiency(g)
        p = set(self.gallai_edmonds(g).a)
        profile = self.graph_service.components(g, removed=p)
        while profile.even:
            p.add(min(profile.even[0]))
            profile = self.graph_service.components(g, removed=p)

        witness = WitnessSet(p=frozenset(p), odd_components=profile.odd_count)
        if witness.value != deficiency:
            logger.error(f"Witness value {witness.value} misses deficiency {deficiency} on {g!r}")
            raise BaseGraphError(
                "Witness set does not certify the Tutte-Berge deficiency",
                details={"value": witness.value, "deficiency": deficiency},
            )
        return witness

    def is_factor_critical(self, g: Graph) -> bool:
        if g.n % 2 == 0:
            return False
        return all(
            2 * self.maximum_matching(self.graph_service.delete(g, (v,)).graph).nu == g.n - 1
            for v in range(g.n)
        )


def _augment_from(g: Graph, mate: list[int], root: int) -> bool:
    """
    Search one alternating tree from ``root`` and flip the first augmenting path.

    Blossoms are contracted by pointing every member's ``base`` at the blossom
    base; ``parent`` holds the tree edge into each inner vertex.
    """
    n = g.n
    parent = [-1] * n
    base = list(range(n))
    outer = [False] * n
    outer[root] = True
    queue = deque([root])

    def common_base(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != b:
            in_blossom[base[v]] = in_blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while queue:
        v = queue.popleft()
        for u in iter_bits(g.rows[v]):
            if base[v] == base[u] or mate[v] == u:
                continue
            if u == root or (mate[u] != -1 and parent[mate[u]] != -1):
                b = common_base(v, u)
                in_blossom = [False] * n
                mark_path(v, b, u, in_blossom)
                mark_path(u, b, v, in_blossom)
                for i in range(n):
                    if in_blossom[base[i]]:
                        base[i] = b
                        if not outer[i]:
                            outer[i] = True
                            queue.append(i)
            elif parent[u] == -1:
                parent[u] = v
                if mate[u] == -1:
                    while u != -1:
                        pv = parent[u]
                        following = mate[pv]
                        mate[u], mate[pv] = pv, u
                        u = following
                    return True
                outer[mate[u]] = True
                queue.append(mate[u])
    return False
