from .chromatic_model import ChiCertificate
from .graph_model import ComponentProfile, Graph, InducedGraph, VertexSet
from .matching_model import GallaiEdmonds, Matching, WitnessSet
from .split_model import (
    Branch,
    Candidate,
    CaseTrace,
    HypothesisReport,
    SplitCertificate,
)
from .sweep_model import FailureReason, SweepFailure, SweepReport

# Export all models
__all__ = [
    "Branch",
    "Candidate",
    "CaseTrace",
    "ChiCertificate",
    "ComponentProfile",
    "FailureReason",
    "GallaiEdmonds",
    "Graph",
    "HypothesisReport",
    "InducedGraph",
    "Matching",
    "SplitCertificate",
    "SweepFailure",
    "SweepReport",
    "VertexSet",
    "WitnessSet",
]
