from dataclasses import dataclass

from src.models.graph_model import VertexSet


@dataclass(frozen=True, slots=True)
class Matching:
    """Vertex-disjoint edges, each written (u, v) with u < v, in lexicographic order."""

    edges: tuple[tuple[int, int], ...]

    @property
    def nu(self) -> int:
        return len(self.edges)

    def mate(self) -> dict[int, int]:
        partner: dict[int, int] = {}
        for u, v in self.edges:
            partner[u] = v
            partner[v] = u
        return partner

    def covered(self) -> VertexSet:
        return frozenset(v for edge in self.edges for v in edge)


@dataclass(frozen=True, slots=True)
class WitnessSet:
    """A set P together with the number of odd components of (host - P)."""

    p: VertexSet
    odd_components: int

    @property
    def value(self) -> int:
        return self.odd_components - len(self.p)


@dataclass(frozen=True, slots=True)
class GallaiEdmonds:
    """
    Gallai-Edmonds partition.

    ``d`` holds the vertices some maximum matching misses, ``a`` their
    neighbours outside ``d`` and ``c`` everything else.
    """

    d: VertexSet
    a: VertexSet
    c: VertexSet
