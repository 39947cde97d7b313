from pydantic import BaseModel, ConfigDict, Field

from src.models.split_model import Branch, CaseTrace
from src.models.sweep_model import SweepMode, SweepReport


class FailureRecord(BaseModel):
    """One sweep instance that did not yield a verified certificate."""

    model_config = ConfigDict(from_attributes=True)

    graph6: str
    s: int = Field(..., ge=2)
    t: int = Field(..., ge=2)
    reason: str


class SweepSummary(BaseModel):
    """Closing block of a sweep report."""

    n_min: int
    n_max: int
    mode: SweepMode
    graphs_checked: int = Field(..., ge=0)
    instance_count: int = Field(..., ge=0)
    hypothesis_instances: int = Field(..., ge=0)
    branch_histogram: dict[str, int]
    failure_count: int = Field(..., ge=0)
    confirmed: bool
    wall_time: float

    @classmethod
    def from_report(cls, report: SweepReport) -> "SweepSummary":
        return cls(
            n_min=report.n_min,
            n_max=report.n_max,
            mode=report.mode,
            graphs_checked=report.graphs_checked,
            instance_count=report.instance_count,
            hypothesis_instances=report.hypothesis_instances,
            branch_histogram=dict(sorted(report.branch_histogram.items())),
            failure_count=len(report.failures),
            confirmed=report.confirmed,
            wall_time=round(report.wall_time, 3),
        )


class FailureLine(BaseModel):
    failure: FailureRecord


class SummaryLine(BaseModel):
    summary: SweepSummary


class TraceRecord(BaseModel):
    """One construction attempt recorded in a counterexample dump."""

    branch: Branch
    named_sets: dict[str, list[int]] = {}
    markers: dict[str, int] = {}
    notes: str = ""

    @classmethod
    def from_trace(cls, trace: CaseTrace) -> "TraceRecord":
        return cls(
            branch=trace.branch,
            named_sets={role: sorted(trace.named_sets[role]) for role in sorted(trace.named_sets)},
            markers={name: trace.markers[name] for name in sorted(trace.markers)},
            notes=trace.notes,
        )


class CounterexampleDump(BaseModel):
    """An instance every construction and the exhaustive search failed on."""

    graph: str = Field(..., min_length=1, description="graph6 encoding of G")
    s: int = Field(..., ge=2)
    t: int = Field(..., ge=2)
    attempts: list[TraceRecord]
