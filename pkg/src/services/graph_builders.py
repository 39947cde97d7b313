"""Named graphs and the join / disjoint-union operators.

Labels are handed out block by block in argument order, so ``join(a, b)`` puts
``a`` on 0..a.n-1 and ``b`` right after it.
"""

from collections.abc import Iterable

from src.exceptions.graph_exceptions import BadParametersError
from src.models.graph_model import Graph


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise BadParametersError(f"A cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def circulant_graph(n: int, distances: Iterable[int]) -> Graph:
    steps = {d % n for d in distances} - {0}
    return Graph.from_edges(n, ((i, (i + d) % n) for i in range(n) for d in steps))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    rows: list[int] = []
    offset = 0
    for g in graphs:
        rows.extend(row << offset for row in g.rows)
        offset += g.n
    return Graph(offset, tuple(rows))


def join(*graphs: Graph) -> Graph:
    """Disjoint union plus every edge between different parts."""
    union = disjoint_union(*graphs)
    full = union.vertex_mask
    rows = list(union.rows)
    offset = 0
    for g in graphs:
        block = ((1 << g.n) - 1) << offset
        for v in range(offset, offset + g.n):
            rows[v] |= full & ~block
        offset += g.n
    return Graph(union.n, tuple(rows))
