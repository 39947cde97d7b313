from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import StrEnum

from src.models.chromatic_model import ChiCertificate
from src.models.graph_model import VertexSet


class Branch(StrEnum):
    CASE1_SUB1 = "CASE1_SUB1"
    CASE1_SUB2 = "CASE1_SUB2"
    CASE2_PRELIM = "CASE2_PRELIM"
    CASE2_SUB1 = "CASE2_SUB1"
    CASE2_SUB2_CONTRA = "CASE2_SUB2_CONTRA"
    CASE2_SUB2_MAIN = "CASE2_SUB2_MAIN"
    FALLBACK = "FALLBACK"


# Role names each branch may record
BRANCH_ROLES: dict[Branch, frozenset[str]] = {
    Branch.CASE1_SUB1: frozenset({"P", "pairs", "singles"}),
    Branch.CASE1_SUB2: frozenset({"P", "H0", "X", "singles"}),
    Branch.CASE2_PRELIM: frozenset({"P", "S'"}),
    Branch.CASE2_SUB1: frozenset({"P", "S'", "F", "H0", "X", "L0", "pairs"}),
    Branch.CASE2_SUB2_CONTRA: frozenset({"P", "S'", "F'", "H0", "X", "L0", "pairs"}),
    Branch.CASE2_SUB2_MAIN: frozenset({"P", "S'", "H0", "U1", "U2", "Y", "L0", "pairs"}),
    Branch.FALLBACK: frozenset({"P"}),
}


@dataclass(frozen=True)
class CaseTrace:
    """Which construction produced a candidate, with the sets it was built from."""

    branch: Branch
    named_sets: Mapping[str, VertexSet] = field(default_factory=dict)
    markers: Mapping[str, int] = field(default_factory=dict)
    notes: str = ""

    def __post_init__(self) -> None:
        unknown = set(self.named_sets) - BRANCH_ROLES[self.branch]
        if unknown:
            raise ValueError(f"Roles {sorted(unknown)} are not used by branch {self.branch}")


@dataclass(frozen=True)
class Candidate:
    """A proposed s-side produced by one cascade construction."""

    s_side: VertexSet
    trace: CaseTrace


@dataclass(frozen=True, slots=True)
class HypothesisReport:
    alpha: int
    omega: int
    chi: int | None
    holds: bool
    reasons: tuple[str, ...] = ()


@dataclass(frozen=True)
class SplitCertificate:
    """
    A partition (S, T) of V(G) with chi(G[S]) >= s and chi(G[T]) >= t + 1.

    The evidences are computed on the induced subgraphs, whose vertices are
    the sides' labels in ascending order.
    """

    s: int
    t: int
    s_side: VertexSet
    t_side: VertexSet
    s_evidence: ChiCertificate
    t_evidence: ChiCertificate
    trace: CaseTrace
