from collections.abc import Iterable

from loguru import logger

from src.exceptions.graph_exceptions import (
    BadParametersError,
    InsufficientSizeError,
    NotFoundError,
    NotTriangleFreeError,
    OutOfRangeError,
)
from src.models.graph_model import (
    ComponentProfile,
    Graph,
    InducedGraph,
    VertexSet,
    iter_bits,
    lowest_bit,
    to_mask,
)
from src.services.base_service import BaseService

# R(3, k): every triangle-free graph on this many vertices has an independent k-set
RAMSEY_3 = {2: 3, 3: 6, 4: 9}


class GraphService(BaseService):
    """Structure queries on bitset graphs."""

    def complement(self, g: Graph) -> Graph:
        full = g.vertex_mask
        return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.rows)))

    def components(self, g: Graph, removed: Iterable[int] = ()) -> ComponentProfile:
        """
        Connected components of g minus ``removed``, ordered by smallest label.
        """
        remaining = g.vertex_mask & ~to_mask(removed)
        found: list[VertexSet] = []
        while remaining:
            component = frontier = 1 << lowest_bit(remaining)
            while frontier:
                reach = 0
                for v in iter_bits(frontier):
                    reach |= g.rows[v]
                frontier = reach & remaining & ~component
                component |= frontier
            found.append(frozenset(iter_bits(component)))
            remaining &= ~component
        return ComponentProfile(tuple(found))

    def induced(self, g: Graph, a: Iterable[int]) -> InducedGraph:
        """
        G[a], relabelled 0..|a|-1 in the order of the original labels.

        Raises:
            OutOfRangeError: If a contains a label >= n
        """
        labels = tuple(sorted(set(a)))
        outside = [v for v in labels if not 0 <= v < g.n]
        if outside:
            raise OutOfRangeError(
                f"Vertices {outside} are not in 0..{g.n - 1}", details={"n": g.n}
            )
        index = {v: i for i, v in enumerate(labels)}
        keep = to_mask(labels)
        rows = tuple(
            sum(1 << index[u] for u in iter_bits(g.rows[v] & keep)) for v in labels
        )
        return InducedGraph(Graph(len(labels), rows), labels)

    def delete(self, g: Graph, removed: Iterable[int]) -> InducedGraph:
        gone = set(removed)
        return self.induced(g, (v for v in range(g.n) if v not in gone))

    def is_triangle_free(self, g: Graph) -> bool:
        for u, row in enumerate(g.rows):
            for v in iter_bits(row >> (u + 1) << (u + 1)):
                if row & g.rows[v]:
                    return False
        return True

    def is_clique(self, g: Graph, a: Iterable[int]) -> bool:
        members = to_mask(a)
        return all((g.rows[v] | 1 << v) & members == members for v in iter_bits(members))

    def is_independent(self, g: Graph, a: Iterable[int]) -> bool:
        members = to_mask(a)
        return all(not g.rows[v] & members for v in iter_bits(members))

    def maximum_clique(self, g: Graph) -> VertexSet:
        """
        Exact maximum clique by branch and bound with a greedy colouring bound.

        Raises:
            TooLargeError: If g exceeds MAX_N
        """
        self.ensure_size(g, operation="clique_number")
        rows = g.rows
        best: list[int] = []

        def expand(clique: list[int], candidates: int) -> None:
            nonlocal best
            order, bounds = _color_sort(rows, candidates)
            for i in range(len(order) - 1, -1, -1):
                if len(clique) + bounds[i] <= len(best):
                    return
                v = order[i]
                clique.append(v)
                narrowed = candidates & rows[v]
                if narrowed:
                    expand(clique, narrowed)
                elif len(clique) > len(best):
                    best = clique.copy()
                clique.pop()
                candidates &= ~(1 << v)

        if g.n:
            expand([], g.vertex_mask)
        return frozenset(best)

    def clique_number(self, g: Graph) -> int:
        return len(self.maximum_clique(g))

    def independence_number(self, g: Graph) -> int:
        return self.clique_number(self.complement(g))

    def find_independent_set(self, g: Graph, k: int) -> VertexSet:
        """
        An independent set of exactly k vertices in a triangle-free graph.

        A neighbourhood of a triangle-free graph is independent, so any vertex of
        degree >= k answers at once; otherwise a backtracking search runs.

        Raises:
            BadParametersError: If k is not 2, 3 or 4
            NotTriangleFreeError: If g contains a triangle
            InsufficientSizeError: If n < R(3, k) and the search found nothing
            NotFoundError: If the search found nothing
        """
        if k not in RAMSEY_3:
            raise BadParametersError(f"k must be one of {sorted(RAMSEY_3)}, got {k}")
        if not self.is_triangle_free(g):
            raise NotTriangleFreeError("Ramsey extraction needs a triangle-free graph")

        for v in range(g.n):
            if g.degree(v) >= k:
                return frozenset(g.neighbor_list(v)[:k])

        bound = RAMSEY_3[k]
        if g.n < bound:
            logger.warning(f"n={g.n} is below R(3,{k})={bound}; no independent {k}-set is guaranteed")

        found = _search_independent(g, k)
        if found is None:
            if g.n < bound:
                raise InsufficientSizeError(
                    f"No independent {k}-set in a graph on {g.n} < R(3,{k}) vertices",
                    details={"n": g.n, "k": k},
                )
            raise NotFoundError(f"No independent {k}-set found", details={"n": g.n, "k": k})
        return found


def _color_sort(rows: tuple[int, ...], candidates: int) -> tuple[list[int], list[int]]:
    """Greedy colouring of the candidates; bounds[i] is the colour count up to order[i]."""
    order: list[int] = []
    bounds: list[int] = []
    color = 0
    uncolored = candidates
    while uncolored:
        color += 1
        available = uncolored
        while available:
            v = lowest_bit(available)
            available &= ~rows[v] & ~(1 << v)
            uncolored &= ~(1 << v)
            order.append(v)
            bounds.append(color)
    return order, bounds


def _search_independent(g: Graph, k: int) -> VertexSet | None:
    def extend(chosen: list[int], candidates: int) -> list[int] | None:
        if len(chosen) == k:
            return chosen
        remaining = candidates
        for v in iter_bits(candidates):
            if len(chosen) + remaining.bit_count() < k:
                return None
            remaining &= ~(1 << v)
            result = extend([*chosen, v], remaining & ~g.rows[v])
            if result is not None:
                return result
        return None

    found = extend([], g.vertex_mask)
    return frozenset(found) if found is not None else None
