from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.models.graph_model import Graph
from src.models.split_model import Branch, SplitCertificate


class SplitParameters(BaseModel):
    """The (s, t) whose (s, t+1) split is wanted."""

    model_config = ConfigDict(frozen=True)

    s: int = Field(..., ge=2)
    t: int = Field(..., ge=2)

    @model_validator(mode="after")
    def validate_order(self) -> "SplitParameters":
        if self.t < self.s:
            raise ValueError(f"t must be at least s (got s={self.s}, t={self.t})")
        return self


class SplitRequest(SplitParameters):
    """A graph and the split parameters for it."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    g: Graph


class CertificateDocument(BaseModel):
    """Serialized SplitCertificate. Field order is the document's key order."""

    graph: str = Field(..., min_length=1, description="graph6 encoding of G")
    s: int
    t: int
    s_side: list[int]
    t_side: list[int]
    s_chi: int = Field(..., ge=0)
    t_chi: int = Field(..., ge=0)
    branch: Branch
    named_sets: dict[str, list[int]] = {}
    markers: dict[str, int] = {}
    verified: bool = False

    @field_validator("named_sets")
    @classmethod
    def sort_named_sets(cls, v: dict[str, list[int]]) -> dict[str, list[int]]:
        return {role: sorted(v[role]) for role in sorted(v)}

    @field_validator("markers")
    @classmethod
    def sort_markers(cls, v: dict[str, int]) -> dict[str, int]:
        return {name: v[name] for name in sorted(v)}

    @classmethod
    def from_certificate(
        cls, certificate: SplitCertificate, graph6: str, verified: bool
    ) -> "CertificateDocument":
        return cls(
            graph=graph6,
            s=certificate.s,
            t=certificate.t,
            s_side=sorted(certificate.s_side),
            t_side=sorted(certificate.t_side),
            s_chi=certificate.s_evidence.chi,
            t_chi=certificate.t_evidence.chi,
            branch=certificate.trace.branch,
            named_sets={k: sorted(v) for k, v in certificate.trace.named_sets.items()},
            markers=dict(certificate.trace.markers),
            verified=verified,
        )
