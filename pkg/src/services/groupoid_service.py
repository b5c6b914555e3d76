"""Breadth-first exploration of the Weyl groupoid of a diagonal bicharacter.

Bases are integer matrices whose rows are the basis vectors in coordinates of
the standard basis E. The diagram read at a basis F depends only on the
symmetrised matrix ``F Q F^T``, so Cartan rows are cached per diagram and all
reflections of one basis are produced with a single broadcast.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, NamedTuple

import numpy as np
from sympy import Matrix

from ..core.exceptions import InvalidDiagramError, ReflectionUndefinedError, StateError
from ..models.diagram import DynkinDiagram
from ..models.groupoid import (
    Basis,
    ExplorationCaps,
    GroupoidResult,
    ReflectionFailure,
    ReflectionWord,
    Verdict,
)
from ..models.scalar import Scalar
from .cartan import cartan_exponent
from .diagram_service import (
    DiagramKey,
    canonical_key_from_labels,
    from_key,
    is_path_graph,
    restrict,
)

if TYPE_CHECKING:
    from collections.abc import Sequence

    from ..models.diagram import BicharacterMatrix

logger = logging.getLogger(__name__)


class EquivalenceResult(NamedTuple):
    equivalent: bool
    shared: DiagramKey | None


@dataclass
class _Context:
    """Per-matrix state: exponent arrays and the Cartan row cache."""

    free: np.ndarray
    tor: np.ndarray
    torsion: int
    dim: int
    upper: tuple[np.ndarray, np.ndarray]
    cartan_cache: dict[bytes, np.ndarray | tuple[int, int]] = field(default_factory=dict)


class _Reading(NamedTuple):
    key: bytes
    cartan: np.ndarray | tuple[int, int]


class WeylGroupoidExplorer:
    """Explores Weyl groupoids and answers questions about their objects."""

    def __init__(self, *, caps: ExplorationCaps | None = None) -> None:
        self._caps = caps or ExplorationCaps.from_settings()
        self._results: dict[bytes, GroupoidResult] = {}
        self._orbits: dict[bytes, frozenset[DiagramKey]] = {}

    @property
    def caps(self) -> ExplorationCaps:
        return self._caps

    # ------------------------------------------------------------------ reading

    def _context(self, matrix: BicharacterMatrix) -> _Context:
        d = matrix.dim
        for i in range(d):
            if matrix.entry(i, i).is_one():
                raise InvalidDiagramError(
                    f"Vertex {i + 1} has label 1; reflections need q_ii != 1",
                    vertex=i + 1,
                )
        return _Context(
            free=matrix.free,
            tor=matrix.tor,
            torsion=matrix.torsion,
            dim=d,
            upper=np.triu_indices(d, k=1),
        )

    def _forms(self, ctx: _Context, f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Exponent arrays of ``p_ij = chi(f_i, f_j)``."""
        pf = f @ ctx.free @ f.T
        pt = (f @ ctx.tor @ f.T) % ctx.torsion
        return pf, pt

    def _read(self, ctx: _Context, f: np.ndarray) -> _Reading:
        pf, pt = self._forms(ctx, f)
        n = ctx.torsion
        ef = pf + pf.T
        et = (pt + pt.T) % n
        vf = np.diagonal(pf)
        vt = np.diagonal(pt)
        key = np.concatenate((vf, vt, ef[ctx.upper], et[ctx.upper])).tobytes()
        cached = ctx.cartan_cache.get(key)
        if cached is None:
            cached = self._cartan(ctx, vf, vt, ef, et)
            ctx.cartan_cache[key] = cached
        return _Reading(key, cached)

    @staticmethod
    def _cartan(
        ctx: _Context, vf: np.ndarray, vt: np.ndarray, ef: np.ndarray, et: np.ndarray
    ) -> np.ndarray | tuple[int, int]:
        d = ctx.dim
        cartan = np.full((d, d), 2, dtype=np.int64)
        for i in range(d):
            pf_i, pt_i = int(vf[i]), int(vt[i])
            for j in range(d):
                if i == j:
                    continue
                m = cartan_exponent(pf_i, pt_i, int(ef[i, j]), int(et[i, j]), ctx.torsion)
                if m is None:
                    return (i, j)
                cartan[i, j] = -m
        return cartan

    def _key_to_canonical(self, ctx_dim: int, torsion: int, key: bytes) -> DiagramKey:
        d = ctx_dim
        values = np.frombuffer(key, dtype=np.int64)
        m = d * (d - 1) // 2
        vf, vt = values[:d], values[d : 2 * d]
        ef, et = values[2 * d : 2 * d + m], values[2 * d + m :]
        vertices = [(int(vf[i]), int(vt[i])) for i in range(d)]
        edges = [[(0, 0)] * d for _ in range(d)]
        position = 0
        for i in range(d):
            for j in range(i + 1, d):
                label = (int(ef[position]), int(et[position]))
                edges[i][j] = label
                edges[j][i] = label
                position += 1
        return canonical_key_from_labels(d, torsion, vertices, edges)

    # --------------------------------------------------------------- operations

    def cartan_integer(
        self, matrix: BicharacterMatrix, basis: Basis, i: int, j: int
    ) -> int | None:
        """Cartan integer ``a_ij`` at ``basis``; None when undefined."""
        if i == j:
            return 2
        ctx = self._context(matrix)
        pf, pt = self._forms(ctx, basis.as_array())
        m = cartan_exponent(
            int(pf[i, i]),
            int(pt[i, i]),
            int(pf[i, j] + pf[j, i]),
            int((pt[i, j] + pt[j, i]) % ctx.torsion),
            ctx.torsion,
        )
        return None if m is None else -m

    def _reflect_array(
        self, ctx: _Context, f: np.ndarray, i: int, position: int | None = None
    ) -> np.ndarray:
        pf, pt = self._forms(ctx, f)
        row = np.zeros(ctx.dim, dtype=np.int64)
        for j in range(ctx.dim):
            if j == i:
                row[j] = 2
                continue
            m = cartan_exponent(
                int(pf[i, i]),
                int(pt[i, i]),
                int(pf[i, j] + pf[j, i]),
                int((pt[i, j] + pt[j, i]) % ctx.torsion),
                ctx.torsion,
            )
            if m is None:
                basis = Basis.from_array(f)
                raise ReflectionUndefinedError(
                    f"Reflection s{i + 1} is undefined at {basis}: no Cartan integer "
                    f"for ({i + 1}, {j + 1})",
                    basis=basis.notation(),
                    i=i + 1,
                    j=j + 1,
                    position=position,
                )
            row[j] = -m
        return f - row[:, None] * f[i][None, :]

    def reflect(self, matrix: BicharacterMatrix, basis: Basis, i: int) -> Basis:
        """Apply ``s_i`` at ``basis``: ``f_i -> -f_i`` and ``f_j -> f_j - a_ij f_i``."""
        if not 0 <= i < matrix.dim:
            raise InvalidDiagramError(f"Reflection index {i + 1} out of range")
        ctx = self._context(matrix)
        return Basis.from_array(self._reflect_array(ctx, basis.as_array(), i))

    def explore(self, matrix: BicharacterMatrix) -> GroupoidResult:
        """Breadth-first search over all bases reachable from the standard basis.

        Levels are processed in lexicographic order of the basis matrices so that
        verdicts, failures and statistics are reproducible.
        """
        fingerprint = matrix.fingerprint()
        if fingerprint in self._results:
            return self._results[fingerprint]

        ctx = self._context(matrix)
        d = ctx.dim
        caps = self._caps
        start = np.eye(d, dtype=np.int64)
        seen: set[bytes] = {start.tobytes()}
        stack: list[np.ndarray] = [start]
        keys: set[bytes] = set()
        level = [start]
        depth = 0
        verdict = Verdict.FULL_FINITE
        failure: ReflectionFailure | None = None

        logger.debug(
            "Exploration started",
            extra={"dim": d, "torsion": ctx.torsion, "max_bases": caps.max_bases},
        )

        while level and verdict is Verdict.FULL_FINITE:
            following: list[np.ndarray] = []
            for f in level:
                reading = self._read(ctx, f)
                keys.add(reading.key)
                if isinstance(reading.cartan, tuple):
                    i, j = reading.cartan
                    verdict = Verdict.NOT_FULL
                    failure = ReflectionFailure(Basis.from_array(f), i, j)
                    break
                images = f[None, :, :] - reading.cartan[:, :, None] * f[:, None, :]
                if np.abs(images).max() > caps.max_coeff:
                    verdict = Verdict.CAP_EXCEEDED
                    break
                for image in images:
                    raw = image.tobytes()
                    if raw not in seen:
                        seen.add(raw)
                        following.append(image)
                if len(seen) >= caps.max_bases:
                    verdict = Verdict.CAP_EXCEEDED
                    break
            if verdict is not Verdict.FULL_FINITE or not following:
                break
            block = np.stack(following)
            order = np.lexsort(block.reshape(len(following), -1).T[::-1])
            level = [block[k] for k in order]
            stack.extend(level)
            depth += 1

        basis_stack = np.stack(stack)
        basis_stack.setflags(write=False)
        vectors = basis_stack.reshape(-1, d)
        roots = np.unique(np.concatenate((vectors, -vectors)), axis=0)
        result = GroupoidResult(
            dim=d,
            verdict=verdict,
            basis_stack=basis_stack,
            roots=frozenset(tuple(int(x) for x in row) for row in roots),
            depth=depth,
            diagram_keys=frozenset(keys),
            failure=failure,
        )
        logger.debug(
            "Exploration finished",
            extra={
                "verdict": verdict.value,
                "num_bases": result.num_bases,
                "num_roots": result.num_roots,
                "depth": depth,
            },
        )
        if result.is_full_finite:
            self._results[fingerprint] = result
        return result

    def positive_roots(self, result: GroupoidResult) -> frozenset[tuple[int, ...]]:
        """Roots with all coordinates non-negative.

        Raises:
            StateError: If the exploration did not end full and finite
        """
        if not result.is_full_finite:
            raise StateError(
                f"Positive roots need a full_finite result, got {result.verdict.value}"
            )
        return frozenset(v for v in result.roots if all(x >= 0 for x in v))

    def apply_word(
        self, matrix: BicharacterMatrix, word: ReflectionWord
    ) -> tuple[Basis, list[Basis]]:
        """Apply a word to the standard basis, rightmost letter first.

        Returns:
            The final basis and the trace starting with E

        Raises:
            ReflectionUndefinedError: With ``position`` the number of letters
                already applied when a reflection is undefined
        """
        word.check_rank(matrix.dim)
        ctx = self._context(matrix)
        f = np.eye(matrix.dim, dtype=np.int64)
        trace = [Basis.from_array(f)]
        for position, letter in enumerate(word.application_order()):
            f = self._reflect_array(ctx, f, letter, position)
            trace.append(Basis.from_array(f))
        return trace[-1], trace

    def terminal_shape(self, basis: Basis) -> tuple[int, tuple[int, ...]] | None:
        """Return ``(e, alpha)`` if ``basis`` is ``(E minus e_e)`` plus ``-alpha``.

        ``alpha`` must be non-negative and nonzero; ``e`` is 0-based.
        """
        d = basis.dim
        units: set[int] = set()
        negative: list[tuple[int, ...]] = []
        for vector in basis.vectors:
            support = [k for k, x in enumerate(vector) if x != 0]
            if len(support) == 1 and vector[support[0]] == 1:
                units.add(support[0])
            elif all(x <= 0 for x in vector) and support:
                negative.append(tuple(-x for x in vector))
            else:
                return None
        if len(units) != d - 1 or len(negative) != 1:
            return None
        (missing,) = set(range(d)) - units
        return missing, negative[0]

    def witnesses_finiteness_induction(
        self, matrix: BicharacterMatrix, word: ReflectionWord
    ) -> bool:
        """Check that ``word`` maps E to ``(E minus e) + {-alpha}`` over a finite rest.

        The remaining ``d - 1`` simple roots must span a full and finite system.
        """
        final, _ = self.apply_word(matrix, word)
        shape = self.terminal_shape(final)
        if shape is None:
            return False
        missing, _ = shape
        d = matrix.dim
        if d == 1:
            return True
        rest = [k for k in range(d) if k != missing]
        return self.explore(restrict(matrix, rest)).is_full_finite

    def find_induction_word(
        self, matrix: BicharacterMatrix, max_length: int = 6
    ) -> ReflectionWord | None:
        """Shortest word (then lexicographically first) witnessing finiteness by induction."""
        d = matrix.dim
        ctx = self._context(matrix)
        start = np.eye(d, dtype=np.int64)
        queue: deque[tuple[np.ndarray, tuple[int, ...]]] = deque([(start, ())])
        finite_rest: dict[int, bool] = {}
        while queue:
            f, applied = queue.popleft()
            shape = self.terminal_shape(Basis.from_array(f))
            if shape is not None and applied:
                missing = shape[0]
                if missing not in finite_rest:
                    rest = [k for k in range(d) if k != missing]
                    finite_rest[missing] = d == 1 or (
                        self.explore(restrict(matrix, rest)).is_full_finite
                    )
                if finite_rest[missing]:
                    return ReflectionWord(tuple(reversed(applied)))
            if len(applied) >= max_length:
                continue
            for letter in range(d):
                if applied and applied[-1] == letter:
                    continue
                try:
                    image = self._reflect_array(ctx, f, letter)
                except ReflectionUndefinedError:
                    continue
                queue.append((image, (*applied, letter)))
        return None

    def diagram_at(self, matrix: BicharacterMatrix, basis: Basis) -> DynkinDiagram:
        """Generalized Dynkin diagram of ``p_ij = chi(f_i, f_j)``."""
        ctx = self._context(matrix)
        pf, pt = self._forms(ctx, basis.as_array())
        d = ctx.dim
        n = ctx.torsion
        vertices = [Scalar(int(pf[i, i]), int(pt[i, i]), n) for i in range(d)]
        edges = {
            (i, j): Scalar(int(pf[i, j] + pf[j, i]), int(pt[i, j] + pt[j, i]), n)
            for i in range(d)
            for j in range(i + 1, d)
        }
        return DynkinDiagram.from_labels(vertices, edges)

    def orbit_diagrams(
        self, matrix: BicharacterMatrix, result: GroupoidResult | None = None
    ) -> frozenset[DiagramKey]:
        """Canonical forms of the diagrams read at every reached basis."""
        fingerprint = matrix.fingerprint()
        if fingerprint not in self._orbits:
            result = result or self.explore(matrix)
            self._orbits[fingerprint] = frozenset(
                self._key_to_canonical(matrix.dim, matrix.torsion, key)
                for key in result.diagram_keys
            )
        return self._orbits[fingerprint]

    def weyl_equivalent(
        self, first: BicharacterMatrix, second: BicharacterMatrix
    ) -> EquivalenceResult:
        """Decide Weyl equivalence by intersecting the diagram orbits.

        Raises:
            StateError: If either input is not full and finite
        """
        results = [self.explore(first), self.explore(second)]
        for label, result in zip(("first", "second"), results, strict=True):
            if not result.is_full_finite:
                raise StateError(
                    f"The {label} bicharacter is not full and finite "
                    f"({result.verdict.value})"
                )
        if first.dim != second.dim or first.torsion != second.torsion:
            return EquivalenceResult(False, None)
        shared = self.orbit_diagrams(first, results[0]) & self.orbit_diagrams(
            second, results[1]
        )
        if not shared:
            return EquivalenceResult(False, None)
        return EquivalenceResult(True, min(shared))

    def has_path_representative(self, matrix: BicharacterMatrix) -> bool:
        return any(is_path_graph(from_key(key)) for key in self.orbit_diagrams(matrix))

    @staticmethod
    def coordinates(basis: Basis, vector: Sequence[int]) -> tuple[int, ...]:
        """Coordinates ``x`` with ``vector = sum x_i f_i``.

        Raises:
            InvalidDiagramError: If the vector is not an integer combination
        """
        try:
            solution = Matrix(basis.vectors).T.LUsolve(Matrix(list(vector)))
        except ValueError as exc:
            raise InvalidDiagramError(f"Cannot express vector in the basis: {exc}") from exc
        if not all(c.is_integer for c in solution):
            raise InvalidDiagramError("Vector is not an integer combination of the basis")
        return tuple(int(c) for c in solution)
