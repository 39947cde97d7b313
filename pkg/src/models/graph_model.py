from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import cached_property

from src.exceptions.graph_exceptions import MalformedInputError, OutOfRangeError

VertexSet = frozenset[int]


def to_mask(vertices: Iterable[int]) -> int:
    """Bitmask with one bit per vertex label."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Vertex labels of a bitmask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True, slots=True)
class Graph:
    """
    Undirected simple graph on the vertex set {0..n-1}.

    Row ``v`` of ``rows`` is the bitset of neighbours of ``v``. Instances are
    immutable; every operation returns a new graph.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise OutOfRangeError(f"Vertex count must be nonnegative, got {self.n}")
        if len(self.rows) != self.n:
            raise MalformedInputError(
                f"Expected {self.n} adjacency rows, got {len(self.rows)}",
                details={"n": self.n},
            )
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise OutOfRangeError(f"Row {v} names a vertex outside 0..{self.n - 1}")
            if row >> v & 1:
                raise MalformedInputError(f"Self-loop at vertex {v}", details={"vertex": v})
            for u in iter_bits(row):
                if not self.rows[u] >> v & 1:
                    raise MalformedInputError(
                        f"Adjacency is not symmetric at ({v}, {u})", details={"edge": (v, u)}
                    )

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise OutOfRangeError(f"Edge ({u}, {v}) outside 0..{n - 1}", details={"n": n})
            if u == v:
                raise MalformedInputError(f"Self-loop at vertex {u}", details={"vertex": u})
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> int:
        return self.rows[v]

    def neighbor_list(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges (u, v) with u < v in lexicographic order."""
        for u, row in enumerate(self.rows):
            yield from ((u, v) for v in iter_bits(row >> (u + 1) << (u + 1)))

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


@dataclass(frozen=True, slots=True)
class InducedGraph:
    """An induced subgraph together with the labels it had in its parent."""

    graph: Graph
    labels: tuple[int, ...]

    def lift(self, vertices: Iterable[int]) -> VertexSet:
        return frozenset(self.labels[v] for v in vertices)


@dataclass(frozen=True)
class ComponentProfile:
    """Connected components ordered by their smallest label."""

    components: tuple[VertexSet, ...]

    @cached_property
    def histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(len(c) for c in self.components).items()))

    @property
    def odd(self) -> tuple[VertexSet, ...]:
        return tuple(c for c in self.components if len(c) % 2 == 1)

    @property
    def even(self) -> tuple[VertexSet, ...]:
        return tuple(c for c in self.components if len(c) % 2 == 0)

    @property
    def odd_count(self) -> int:
        return sum(1 for c in self.components if len(c) % 2 == 1)

    def __len__(self) -> int:
        return len(self.components)
