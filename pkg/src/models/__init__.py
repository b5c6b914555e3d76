"""Value types package.

Scalars, diagrams, bases and exploration results are immutable values shared
by every service.
"""

from .catalog import (
    AppendixWord,
    DiagramTemplate,
    ParameterConstraint,
    TableName,
    TableRow,
)
from .diagram import BicharacterMatrix, DynkinDiagram, SimpleChainSpec
from .groupoid import (
    Basis,
    ExplorationCaps,
    GroupoidResult,
    ReflectionFailure,
    ReflectionWord,
    Verdict,
)
from .scalar import Scalar, TorsionConfig, format_scalar, parse_scalar

__all__ = [
    # Scalars
    "Scalar",
    "TorsionConfig",
    "format_scalar",
    "parse_scalar",
    # Diagrams
    "BicharacterMatrix",
    "DynkinDiagram",
    "SimpleChainSpec",
    # Groupoids
    "Basis",
    "ExplorationCaps",
    "GroupoidResult",
    "ReflectionFailure",
    "ReflectionWord",
    "Verdict",
    # Catalog
    "AppendixWord",
    "DiagramTemplate",
    "ParameterConstraint",
    "TableName",
    "TableRow",
]
