"""Value types produced by Weyl groupoid exploration."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from typing import TYPE_CHECKING

import numpy as np

from ..core.exceptions import InvalidDiagramError

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence


@dataclass(frozen=True)
class Basis:
    """Ordered basis of Z^d, each vector written in coordinates of the standard basis."""

    vectors: tuple[tuple[int, ...], ...]

    @classmethod
    def identity(cls, d: int) -> Basis:
        return cls.from_array(np.eye(d, dtype=np.int64))

    @classmethod
    def from_array(cls, array: np.ndarray) -> Basis:
        return cls(tuple(tuple(int(x) for x in row) for row in array))

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[int]]) -> Basis:
        rows = tuple(tuple(int(x) for x in v) for v in vectors)
        d = len(rows)
        if d == 0 or any(len(row) != d for row in rows):
            raise InvalidDiagramError("A basis needs d vectors of length d")
        return cls(rows)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def as_array(self) -> np.ndarray:
        return np.array(self.vectors, dtype=np.int64)

    def notation(self) -> str:
        from ..utils.notation import format_basis

        return format_basis(self)

    def __str__(self) -> str:
        return self.notation()


@dataclass(frozen=True)
class ReflectionWord:
    """A product of simple reflections ``s_{i_1} ... s_{i_k}``.

    ``letters`` are 0-based indices in printed order; the rightmost letter acts
    first.
    """

    letters: tuple[int, ...] = ()

    @classmethod
    def from_printed(cls, letters: Iterable[int]) -> ReflectionWord:
        """Build a word from 1-based letters as printed, leftmost factor first."""
        values = tuple(int(x) for x in letters)
        if any(x < 1 for x in values):
            raise InvalidDiagramError("Reflection letters are 1-based", letters=values)
        return cls(tuple(x - 1 for x in values))

    def application_order(self) -> tuple[int, ...]:
        return tuple(reversed(self.letters))

    def check_rank(self, d: int) -> None:
        bad = [x + 1 for x in self.letters if not 0 <= x < d]
        if bad:
            raise InvalidDiagramError(
                f"Reflection letters {bad} out of range 1..{d}", letters=bad
            )

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(f"s{x + 1}" for x in self.letters) or "id"


class Verdict(StrEnum):
    FULL_FINITE = "full_finite"
    NOT_FULL = "not_full"
    CAP_EXCEEDED = "cap_exceeded"


@dataclass(frozen=True)
class ExplorationCaps:
    """Limits of an exploration.

    Reaching ``max_bases`` bases, or a coordinate above ``max_coeff``, ends the
    search with a presumed-infinite verdict.
    """

    max_bases: int = 10**6
    max_coeff: int = 10**4

    @classmethod
    def from_settings(cls) -> ExplorationCaps:
        from ..core.config import get_settings

        settings = get_settings()
        return cls(max_bases=settings.MAX_BASES, max_coeff=settings.MAX_COEFF)

    @classmethod
    def for_sweep(cls) -> ExplorationCaps:
        from ..core.config import get_settings

        settings = get_settings()
        return cls(
            max_bases=settings.SWEEP_MAX_BASES, max_coeff=settings.SWEEP_MAX_COEFF
        )


@dataclass(frozen=True)
class ReflectionFailure:
    """First basis (in exploration order) where a Cartan integer is undefined."""

    basis: Basis
    i: int
    j: int


@dataclass(frozen=True)
class GroupoidResult:
    """Outcome of a breadth-first exploration.

    ``basis_stack`` holds the reached bases in exploration order, shape
    ``(num_bases, d, d)``; ``diagram_keys`` are the raw twist invariants read
    at those bases.
    """

    dim: int
    verdict: Verdict
    basis_stack: np.ndarray
    roots: frozenset[tuple[int, ...]]
    depth: int
    diagram_keys: frozenset[bytes] = field(default_factory=frozenset)
    failure: ReflectionFailure | None = None

    @property
    def num_bases(self) -> int:
        return int(self.basis_stack.shape[0])

    @property
    def num_roots(self) -> int:
        return len(self.roots)

    @property
    def is_full_finite(self) -> bool:
        return self.verdict is Verdict.FULL_FINITE

    def bases(self) -> list[Basis]:
        return [Basis.from_array(f) for f in self.basis_stack]
