from collections import Counter
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Literal

SweepMode = Literal["exhaustive", "random", "explicit"]


class FailureReason(StrEnum):
    POTENTIAL_COUNTEREXAMPLE = "POTENTIAL_COUNTEREXAMPLE"
    VERIFICATION_FAILED = "VERIFICATION_FAILED"
    TOO_LARGE = "TOO_LARGE"


@dataclass(frozen=True, slots=True)
class SweepFailure:
    graph6: str
    s: int
    t: int
    reason: str


@dataclass
class SweepReport:
    """
    Aggregate of one verification campaign.

    ``instance_count`` counts every (G, s, t) with t >= s >= 2 and
    s + t = chi(G) + 1; ``hypothesis_instances`` those that also have
    chi(G) > omega(G) + 1.
    """

    n_min: int
    n_max: int
    mode: SweepMode
    graphs_checked: int = 0
    instance_count: int = 0
    hypothesis_instances: int = 0
    branch_histogram: Counter[str] = field(default_factory=Counter)
    failures: list[SweepFailure] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def confirmed(self) -> bool:
        return not self.failures

    def merge(self, other: "SweepReport") -> "SweepReport":
        """Fold a worker's partial report into this one."""
        self.graphs_checked += other.graphs_checked
        self.instance_count += other.instance_count
        self.hypothesis_instances += other.hypothesis_instances
        self.branch_histogram.update(other.branch_histogram)
        self.failures.extend(other.failures)
        return self
