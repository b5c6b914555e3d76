"""Pydantic schemas for command reports."""

from .reports import (
    AppendixEntryReport,
    AppendixReport,
    CatalogEntry,
    CatalogListing,
    ChainReport,
    CriteriaReport,
    DiagramSchema,
    EquivalenceReport,
    ErrorReport,
    ExplorationReport,
    Issue,
    OrbitReport,
    PredicateReport,
    RootsReport,
    RowVerificationReport,
    SweepReport,
    TablesReport,
)

__all__ = [
    # Diagram commands
    "DiagramSchema",
    "ExplorationReport",
    "RootsReport",
    "EquivalenceReport",
    "ChainReport",
    "OrbitReport",
    # Criteria
    "PredicateReport",
    "CriteriaReport",
    # Verification
    "Issue",
    "RowVerificationReport",
    "TablesReport",
    "AppendixEntryReport",
    "AppendixReport",
    "SweepReport",
    "CatalogEntry",
    "CatalogListing",
    # Errors
    "ErrorReport",
]
