from dataclasses import dataclass
from functools import cached_property

from src.models.graph_model import VertexSet
from src.models.matching_model import Matching, WitnessSet


@dataclass(frozen=True)
class ChiCertificate:
    """
    Chromatic number of a graph with independence number at most two.

    ``witness`` and ``matching`` live in the complement. The colouring is only
    built when someone asks for it.
    """

    n: int
    chi: int
    witness: WitnessSet
    matching: Matching

    @cached_property
    def coloring(self) -> tuple[VertexSet, ...]:
        """Matched complement edges become two-vertex classes, the rest singletons."""
        covered = self.matching.covered()
        classes = [frozenset(edge) for edge in self.matching.edges]
        classes.extend(frozenset((v,)) for v in range(self.n) if v not in covered)
        return tuple(sorted(classes, key=min))

    @property
    def lower_bound(self) -> int:
        return (self.n + self.witness.odd_components - len(self.witness.p)) // 2
