"""Business logic services package."""

from .diagram_service import canonical_form, to_dynkin
from .groupoid_service import EquivalenceResult, WeylGroupoidExplorer
from .criteria import check_all, root_subsystem, violations
from .catalog_repository import CatalogRepositoryInterface, FileCatalogRepository
from .catalog_service import CatalogService
from .sweep_service import SweepService

__all__ = [
    "canonical_form",
    "to_dynkin",
    "EquivalenceResult",
    "WeylGroupoidExplorer",
    "check_all",
    "root_subsystem",
    "violations",
    "CatalogRepositoryInterface",
    "FileCatalogRepository",
    "CatalogService",
    "SweepService",
]
