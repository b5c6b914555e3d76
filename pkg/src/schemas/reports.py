"""Pydantic schemas for command reports.

Every CLI command returns one of these models; ``src.cli.output`` renders them
as text or as JSON with sorted keys.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from pydantic import BaseModel, Field, computed_field

from ..models.scalar import format_scalar

if TYPE_CHECKING:
    from ..models.diagram import DynkinDiagram


class DiagramSchema(BaseModel):
    """Generalized Dynkin diagram with 1-based vertex numbers."""

    dim: int = Field(..., ge=1, description="Number of vertices")
    vertices: list[str] = Field(..., description="Vertex labels q_ii")
    edges: list[tuple[int, int, str]] = Field(
        default_factory=list, description="Present edges (i, j, q_ij q_ji) with i < j"
    )

    @classmethod
    def from_diagram(cls, diagram: DynkinDiagram) -> DiagramSchema:
        return cls(
            dim=diagram.dim,
            vertices=[format_scalar(v) for v in diagram.vertices],
            edges=[(i + 1, j + 1, format_scalar(x)) for i, j, x in diagram.edge_list()],
        )

    model_config = {"from_attributes": True}


class PredicateReport(BaseModel):
    """Outcome of one necessary condition for finiteness."""

    name: str = Field(..., min_length=1)
    applicable: bool = Field(..., description="Some labelling meets the hypothesis")
    satisfied: bool = Field(..., description="Every applicable labelling meets the conclusion")
    detail: str = ""

    @computed_field  # type: ignore[misc]
    @property
    def violated(self) -> bool:
        return self.applicable and not self.satisfied


class ExplorationReport(BaseModel):
    """Result of the ``classify`` command."""

    source: str
    verdict: str = Field(..., description="full_finite, not_full or cap_exceeded")
    diagram: DiagramSchema
    num_bases: int = Field(..., ge=1, description="Bases reached by the exploration")
    num_positive_roots: int | None = Field(None, ge=0)
    depth: int = Field(..., ge=0)
    cartan_type: str | None = Field(None, description="Finite Cartan type, if any")
    simple_chain: str | None = Field(None, description="C(d,q;I) symbol, if any")
    failure: str | None = Field(None, description="First undefined Cartan integer")


class RootsReport(BaseModel):
    """Positive roots in compressed notation."""

    source: str
    verdict: str
    count: int = Field(..., ge=0)
    positive_roots: list[str] = Field(default_factory=list)


class EquivalenceReport(BaseModel):
    first: str
    second: str
    equivalent: bool
    shared_diagram: DiagramSchema | None = Field(
        None, description="Smallest common diagram of both orbits"
    )


class ChainReport(BaseModel):
    symbol: str
    diagram: DiagramSchema


class CriteriaReport(BaseModel):
    source: str
    diagram: DiagramSchema
    predicates: list[PredicateReport] = Field(default_factory=list)

    @computed_field  # type: ignore[misc]
    @property
    def violations(self) -> int:
        return sum(1 for p in self.predicates if p.violated)


class OrbitReport(BaseModel):
    """Diagrams read along the Weyl groupoid orbit, up to vertex permutation."""

    source: str
    count: int = Field(..., ge=0)
    path_graphs: int = Field(..., ge=0)
    diagrams: list[DiagramSchema] = Field(default_factory=list)


class Issue(BaseModel):
    """A single verification discrepancy."""

    subject: str = Field(..., description="Row, diagram and parameter concerned")
    message: str


class RowVerificationReport(BaseModel):
    table: str
    row: int = Field(..., ge=1)
    params: list[str] = Field(default_factory=list)
    ranks: list[int] = Field(default_factory=list)
    instances: int = Field(0, ge=0, description="Diagrams instantiated")
    explored: int = Field(0, ge=0, description="Groupoids explored")
    cartan_types: list[str] = Field(default_factory=list)
    issues: list[Issue] = Field(default_factory=list)

    @computed_field  # type: ignore[misc]
    @property
    def passed(self) -> bool:
        return not self.issues


class TablesReport(BaseModel):
    rows: list[RowVerificationReport] = Field(default_factory=list)
    cross_row_pairs: int = Field(0, ge=0)
    issues: list[Issue] = Field(default_factory=list, description="Cross-row issues")

    @computed_field  # type: ignore[misc]
    @property
    def passed(self) -> bool:
        return not self.issues and all(r.passed for r in self.rows)


class AppendixEntryReport(BaseModel):
    label: str
    word: str
    final_basis: str | None = None
    removed_vertex: int | None = Field(None, ge=1, description="1-based index of e")
    alpha: str | None = Field(None, description="Root negated in the final basis")
    trace_checked: bool = False
    induction: bool | None = Field(
        None, description="Remaining simple roots span a finite system"
    )
    issues: list[Issue] = Field(default_factory=list)

    @computed_field  # type: ignore[misc]
    @property
    def passed(self) -> bool:
        return not self.issues


class AppendixReport(BaseModel):
    entries: list[AppendixEntryReport] = Field(default_factory=list)

    @computed_field  # type: ignore[misc]
    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)


class SweepReport(BaseModel):
    """Counts and discrepancies of an exhaustive enumeration."""

    d: int = Field(..., ge=1)
    n: int = Field(..., ge=2, description="Labels are drawn from mu_n")
    candidates: int = Field(0, ge=0, description="Connected diagrams enumerated")
    pruned: int = Field(0, ge=0, description="Rejected by a non-finite subdiagram")
    cartan_shortcut: int = Field(0, ge=0, description="Rejected as non-finite Cartan type")
    explored: int = Field(0, ge=0)
    cap_exceeded: int = Field(0, ge=0, description="Explorations stopped by the caps")
    finite: int = Field(0, ge=0, description="Full and finite survivors")
    finite_by_rank: list[int] = Field(
        default_factory=list, description="Survivors of each rank 1..d"
    )
    matched: int = Field(0, ge=0, description="Survivors matched to a table row")
    instantiations: int = Field(0, ge=0, description="Admissible table instances")
    instantiations_found: int = Field(0, ge=0)
    survivors: list[DiagramSchema] = Field(default_factory=list)
    discrepancies: list[Issue] = Field(default_factory=list)

    @computed_field  # type: ignore[misc]
    @property
    def passed(self) -> bool:
        return not self.discrepancies


class CatalogEntry(BaseModel):
    table: str
    row: int = Field(..., ge=1)
    diagrams: int = Field(..., ge=1)
    constraint: str
    rank: str = Field(..., description="Fixed rank, or 'd>=N' for families")


class CatalogListing(BaseModel):
    entries: list[CatalogEntry] = Field(default_factory=list)
    appendix_words: int = Field(0, ge=0)


class ErrorReport(BaseModel):
    error: str
    message: str
    run_id: str | None = None
    detail: dict[str, object] | None = None
