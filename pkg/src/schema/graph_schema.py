from typing import Literal

from pydantic import BaseModel, Field


class ChiResponse(BaseModel):
    graph: str
    n: int = Field(..., ge=0)
    chi: int = Field(..., ge=0)
    omega: int = Field(..., ge=0)
    alpha: int = Field(..., ge=0)
    method: Literal["matching", "bruteforce"]
    witness: list[int] | None = None
    odd_components: int | None = None


class DecompositionResponse(BaseModel):
    """Gallai-Edmonds sets and the maximal witness set of the decomposed graph."""

    graph: str
    complemented: bool
    nu: int = Field(..., ge=0)
    deficiency: int = Field(..., ge=0)
    d: list[int]
    a: list[int]
    c: list[int]
    witness: list[int]
    odd_components: int = Field(..., ge=0)
    value: int


class CheckResponse(BaseModel):
    verified: bool
    violations: list[str] = []
