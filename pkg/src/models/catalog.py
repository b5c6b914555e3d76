"""Catalog entries: table rows with their diagram templates and appendix words."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from typing import TYPE_CHECKING, Literal

from ..core.exceptions import DiagramFormatError
from .groupoid import ReflectionWord

if TYPE_CHECKING:
    from .scalar import Scalar, TorsionConfig


class TableName(StrEnum):
    RANK4 = "rank4"
    RANK_GE5 = "rank_ge5"


# order of the root of unity used as the second sample of a generic parameter
GENERIC_SAMPLE_ORDER = 7


@dataclass(frozen=True)
class ParameterConstraint:
    """Condition on the row parameter.

    ``exclude`` forbids the listed multiplicative orders (a generic parameter is
    always admissible); ``order`` asks for a primitive root of the single listed
    order.
    """

    kind: Literal["exclude", "order"]
    orders: tuple[int, ...]

    @classmethod
    def parse(cls, text: str) -> ParameterConstraint:
        kind, _, values = text.partition(":")
        try:
            orders = tuple(int(v) for v in values.split(",") if v)
        except ValueError:
            raise DiagramFormatError(f"Malformed parameter constraint {text!r}") from None
        if kind not in ("exclude", "order") or not orders or min(orders) < 1:
            raise DiagramFormatError(f"Malformed parameter constraint {text!r}")
        if kind == "order" and len(orders) != 1:
            raise DiagramFormatError(f"Constraint {text!r} must name exactly one order")
        return cls(kind, orders)  # type: ignore[arg-type]

    @property
    def is_generic(self) -> bool:
        return self.kind == "exclude"

    def admits(self, param: Scalar) -> bool:
        order = param.order()
        if self.kind == "order":
            return order == self.orders[0]
        return order is None or order not in self.orders

    def samples(self, config: TorsionConfig) -> list[Scalar]:
        """Parameters a row is verified at: ``[q, z7]`` or ``[zK, zK^-1]``."""
        if self.kind == "order":
            k = self.orders[0]
            return [config.root(k), config.root(k, -1)]
        return [config.generic(), config.root(GENERIC_SAMPLE_ORDER)]

    def __str__(self) -> str:
        return f"{self.kind}:{','.join(map(str, self.orders))}"


@dataclass(frozen=True)
class ChainPlacement:
    """A simple chain ``C(length, label; indices)`` placed on vertices ``1..length``.

    ``length`` and the index items are unevaluated expressions in ``d`` and ``j``.
    """

    length: str
    label: Scalar
    indices: tuple[str, ...]


@dataclass(frozen=True)
class DiagramTemplate:
    """Parsed diagram file; labels are scalars in the row parameter ``q``."""

    source: str
    dim: str
    torsion: int
    generator_order: int | None = None
    d_range: tuple[str, str | None] | None = None
    j_range: tuple[str, str] | None = None
    chains: tuple[ChainPlacement, ...] = ()
    vertices: tuple[tuple[str, Scalar], ...] = ()
    edges: tuple[tuple[str, str, Scalar], ...] = ()

    @property
    def is_family(self) -> bool:
        return self.d_range is not None

    @property
    def uses_j(self) -> bool:
        return self.j_range is not None


@dataclass(frozen=True)
class TableRow:
    """One row of a classification table: Weyl-equivalent diagram templates."""

    table: TableName
    row: int
    constraint: ParameterConstraint
    diagrams: tuple[DiagramTemplate, ...]
    rank: int | None = None

    @property
    def is_family(self) -> bool:
        return any(t.is_family for t in self.diagrams)

    @property
    def uses_j(self) -> bool:
        return any(t.uses_j for t in self.diagrams)

    @property
    def label(self) -> str:
        return f"{self.table.value} row {self.row}"


@dataclass(frozen=True)
class AppendixWord:
    """A reflection word for a table row, optionally with the printed chain of bases.

    ``trace`` starts with the standard basis when present.
    """

    table: TableName
    row: int
    d: int
    word: ReflectionWord
    j: int | None = None
    trace: tuple[tuple[tuple[int, ...], ...], ...] = field(default=())

    @property
    def label(self) -> str:
        suffix = f" j={self.j}" if self.j is not None else ""
        return f"{self.table.value} row {self.row} d={self.d}{suffix}"
