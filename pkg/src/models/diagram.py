"""Bicharacter matrices, generalized Dynkin diagrams and simple-chain symbols."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from ..core.exceptions import InvalidDiagramError
from .scalar import Scalar, format_scalar

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping, Sequence


class BicharacterMatrix:
    """The d x d matrix ``q_ij = chi(e_i, e_j)`` stored as two integer arrays.

    ``free[i, j]`` holds the exponent of the generic parameter and ``tor[i, j]``
    the torsion exponent reduced into ``[0, N)``.
    """

    __slots__ = ("_free", "_tor", "_torsion")

    def __init__(self, free: np.ndarray, tor: np.ndarray, torsion: int) -> None:
        free = np.array(free, dtype=np.int64)
        tor = np.array(tor, dtype=np.int64) % torsion
        if free.ndim != 2 or free.shape[0] != free.shape[1] or free.shape[0] < 1:
            raise InvalidDiagramError("Bicharacter matrix must be square and nonempty")
        if tor.shape != free.shape:
            raise InvalidDiagramError("Free and torsion exponent arrays differ in shape")
        free.setflags(write=False)
        tor.setflags(write=False)
        self._free = free
        self._tor = tor
        self._torsion = torsion

    @classmethod
    def from_entries(cls, rows: Sequence[Sequence[Scalar]]) -> BicharacterMatrix:
        d = len(rows)
        if d == 0 or any(len(row) != d for row in rows):
            raise InvalidDiagramError("Bicharacter matrix must be square and nonempty")
        torsion = rows[0][0].torsion
        if any(entry.torsion != torsion for row in rows for entry in row):
            raise InvalidDiagramError("Entries use different torsion orders")
        free = [[entry.free_exp for entry in row] for row in rows]
        tor = [[entry.tor_exp for entry in row] for row in rows]
        return cls(np.array(free), np.array(tor), torsion)

    @classmethod
    def from_diagram(cls, diagram: DynkinDiagram) -> BicharacterMatrix:
        """Representative with ``q_ij = edge(i, j)`` for ``i < j`` and ``q_ji = 1``."""
        d = diagram.dim
        free = np.zeros((d, d), dtype=np.int64)
        tor = np.zeros((d, d), dtype=np.int64)
        for i, label in enumerate(diagram.vertices):
            free[i, i] = label.free_exp
            tor[i, i] = label.tor_exp
        for i, j, label in diagram.edge_list():
            free[i, j] = label.free_exp
            tor[i, j] = label.tor_exp
        return cls(free, tor, diagram.torsion)

    @property
    def dim(self) -> int:
        return self._free.shape[0]

    @property
    def torsion(self) -> int:
        return self._torsion

    @property
    def free(self) -> np.ndarray:
        return self._free

    @property
    def tor(self) -> np.ndarray:
        return self._tor

    def entry(self, i: int, j: int) -> Scalar:
        return Scalar(int(self._free[i, j]), int(self._tor[i, j]), self._torsion)

    def entries(self) -> list[list[Scalar]]:
        return [[self.entry(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def fingerprint(self) -> bytes:
        return self._torsion.to_bytes(8, "little") + self._free.tobytes() + self._tor.tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BicharacterMatrix):
            return NotImplemented
        return self.fingerprint() == other.fingerprint()

    def __hash__(self) -> int:
        return hash(self.fingerprint())

    def __repr__(self) -> str:
        rows = ", ".join(
            "[" + ", ".join(format_scalar(e) for e in row) + "]" for row in self.entries()
        )
        return f"BicharacterMatrix([{rows}], torsion={self._torsion})"


@dataclass(frozen=True)
class DynkinDiagram:
    """Generalized Dynkin diagram: vertex labels ``q_ii`` and edge labels ``q_ij q_ji``.

    ``edges`` is the full symmetric table with 1 on the diagonal. An edge is
    present iff its label is not 1.
    """

    vertices: tuple[Scalar, ...]
    edges: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self) -> None:
        d = len(self.vertices)
        if d == 0:
            raise InvalidDiagramError("A diagram needs at least one vertex")
        if len(self.edges) != d or any(len(row) != d for row in self.edges):
            raise InvalidDiagramError("Edge table does not match the number of vertices")
        torsion = self.vertices[0].torsion
        for i in range(d):
            if self.vertices[i].torsion != torsion:
                raise InvalidDiagramError("Labels use different torsion orders")
            for j in range(i + 1, d):
                if self.edges[i][j] != self.edges[j][i]:
                    raise InvalidDiagramError(
                        f"Edge table is not symmetric at ({i + 1}, {j + 1})"
                    )
        one = Scalar(0, 0, torsion)
        if any(not self.edges[i][i].is_one() for i in range(d)):
            edges = tuple(
                tuple(one if i == j else label for j, label in enumerate(row))
                for i, row in enumerate(self.edges)
            )
            object.__setattr__(self, "edges", edges)

    @classmethod
    def from_labels(
        cls,
        vertices: Sequence[Scalar],
        edges: Mapping[tuple[int, int], Scalar],
    ) -> DynkinDiagram:
        """Build a diagram from vertex labels and a sparse map of edge labels."""
        d = len(vertices)
        if d == 0:
            raise InvalidDiagramError("A diagram needs at least one vertex")
        one = Scalar(0, 0, vertices[0].torsion)
        table = [[one] * d for _ in range(d)]
        for (i, j), label in edges.items():
            if i == j or not (0 <= i < d and 0 <= j < d):
                raise InvalidDiagramError(f"Invalid edge ({i + 1}, {j + 1})")
            table[i][j] = label
            table[j][i] = label
        return cls(tuple(vertices), tuple(tuple(row) for row in table))

    @property
    def dim(self) -> int:
        return len(self.vertices)

    @property
    def torsion(self) -> int:
        return self.vertices[0].torsion

    def vertex(self, i: int) -> Scalar:
        return self.vertices[i]

    def edge(self, i: int, j: int) -> Scalar:
        return self.edges[i][j]

    def has_edge(self, i: int, j: int) -> bool:
        return i != j and not self.edges[i][j].is_one()

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(self.dim) if self.has_edge(i, j)]

    def edge_list(self) -> list[tuple[int, int, Scalar]]:
        """Present edges ``(i, j, label)`` with ``i < j``."""
        return [
            (i, j, self.edges[i][j])
            for i in range(self.dim)
            for j in range(i + 1, self.dim)
            if self.has_edge(i, j)
        ]

    def relabel(self, perm: Sequence[int]) -> DynkinDiagram:
        """Diagram whose vertex ``k`` is vertex ``perm[k]`` of this one."""
        if sorted(perm) != list(range(self.dim)):
            raise InvalidDiagramError("Relabelling is not a permutation")
        vertices = tuple(self.vertices[p] for p in perm)
        edges = tuple(tuple(self.edges[p][r] for r in perm) for p in perm)
        return DynkinDiagram(vertices, edges)

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self.vertices)

    def __str__(self) -> str:
        labels = " ".join(format_scalar(v) for v in self.vertices)
        edges = " ".join(
            f"{i + 1}-{j + 1}:{format_scalar(label)}" for i, j, label in self.edge_list()
        )
        return f"[{labels}] {edges}".rstrip()


@dataclass(frozen=True)
class SimpleChainSpec:
    """The symbol ``C(d, q; i_1, ..., i_j)`` with 1-based indices."""

    d: int
    q: Scalar
    indices: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.d < 2:
            raise InvalidDiagramError("A simple chain has length at least 2", d=self.d)
        if self.q.is_one():
            raise InvalidDiagramError("The parameter of a simple chain must not be 1")
        indices = tuple(self.indices)
        if any(a >= b for a, b in zip(indices, indices[1:], strict=False)):
            raise InvalidDiagramError(
                "Simple chain indices must be strictly increasing", indices=indices
            )
        if indices and (indices[0] < 1 or indices[-1] > self.d):
            raise InvalidDiagramError(
                f"Simple chain indices must lie in 1..{self.d}", indices=indices
            )
        object.__setattr__(self, "indices", indices)

    def symbol(self) -> str:
        return f"C({self.d},{format_scalar(self.q)};{','.join(map(str, self.indices))})"

    def __str__(self) -> str:
        return self.symbol()
