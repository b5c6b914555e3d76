"""Operations on bicharacter matrices and generalized Dynkin diagrams.

Everything here is a pure function of immutable inputs: evaluation of the
bicharacter, twists, Cartan type detection and naming, canonical forms up to
vertex permutation and the simple-chain calculus.
"""

from __future__ import annotations

from itertools import groupby, permutations, product
from typing import TYPE_CHECKING

import numpy as np

from ..core.exceptions import InvalidDiagramError
from ..models.diagram import BicharacterMatrix, DynkinDiagram, SimpleChainSpec
from ..models.scalar import Scalar
from ..utils.graph import component_sets, diagram_graph, is_connected_graph, path_order
from .cartan import cartan_integer_of

if TYPE_CHECKING:
    from collections.abc import Sequence

# (dim, torsion, vertex labels, upper-triangle edge labels); labels are
# (free_exp, tor_exp) pairs in canonical vertex order
DiagramKey = tuple[int, int, tuple[tuple[int, int], ...], tuple[tuple[int, int], ...]]

_ONE = (0, 0)


def chi_of(matrix: BicharacterMatrix, x: Sequence[int], y: Sequence[int]) -> Scalar:
    """Evaluate ``chi(x, y) = prod q_ij^(x_i y_j)``."""
    d = matrix.dim
    xv = np.asarray(x, dtype=np.int64)
    yv = np.asarray(y, dtype=np.int64)
    if xv.shape != (d,) or yv.shape != (d,):
        raise InvalidDiagramError(
            f"Vectors must have length {d}", x=list(map(int, xv)), y=list(map(int, yv))
        )
    free = int(xv @ matrix.free @ yv)
    tor = int(xv @ matrix.tor @ yv)
    return Scalar(free, tor, matrix.torsion)


def to_dynkin(matrix: BicharacterMatrix) -> DynkinDiagram:
    d = matrix.dim
    sym_free = matrix.free + matrix.free.T
    sym_tor = matrix.tor + matrix.tor.T
    vertices = tuple(matrix.entry(i, i) for i in range(d))
    edges = tuple(
        tuple(
            Scalar(int(sym_free[i, j]), int(sym_tor[i, j]), matrix.torsion)
            if i != j
            else vertices[i]
            for j in range(d)
        )
        for i in range(d)
    )
    return DynkinDiagram(vertices, edges)


def twist(matrix: BicharacterMatrix, i: int, j: int, t: Scalar) -> BicharacterMatrix:
    """Replace ``(q_ij, q_ji)`` by ``(t q_ij, t^-1 q_ji)``."""
    d = matrix.dim
    if i == j or not (0 <= i < d and 0 <= j < d):
        raise InvalidDiagramError(f"Invalid twist indices ({i + 1}, {j + 1})")
    if t.torsion != matrix.torsion:
        raise InvalidDiagramError("Twist scalar uses a different torsion order")
    free = matrix.free.copy()
    tor = matrix.tor.copy()
    free[i, j] += t.free_exp
    tor[i, j] += t.tor_exp
    free[j, i] -= t.free_exp
    tor[j, i] -= t.tor_exp
    return BicharacterMatrix(free, tor, matrix.torsion)


def restrict(matrix: BicharacterMatrix, subset: Sequence[int]) -> BicharacterMatrix:
    """Submatrix on the 0-based indices ``subset``, in the given order."""
    indices = list(subset)
    if not indices:
        raise InvalidDiagramError("Restriction needs a nonempty index set")
    if len(set(indices)) != len(indices):
        raise InvalidDiagramError("Restriction indices must be distinct")
    bad = [k + 1 for k in indices if not 0 <= k < matrix.dim]
    if bad:
        raise InvalidDiagramError(
            f"Restriction indices {bad} out of range 1..{matrix.dim}", indices=bad
        )
    grid = np.ix_(indices, indices)
    return BicharacterMatrix(matrix.free[grid], matrix.tor[grid], matrix.torsion)


def is_connected(diagram: DynkinDiagram) -> bool:
    return is_connected_graph(diagram_graph(diagram))


def is_path_graph(diagram: DynkinDiagram) -> bool:
    return path_order(diagram_graph(diagram)) is not None


def detect_cartan_type(matrix: BicharacterMatrix | DynkinDiagram) -> np.ndarray | None:
    """Return the Cartan matrix if ``q_ij q_ji = q_ii^(a_ij)`` holds for all pairs.

    Raises:
        InvalidDiagramError: If some vertex label is 1
    """
    diagram = matrix if isinstance(matrix, DynkinDiagram) else to_dynkin(matrix)
    d = diagram.dim
    cartan = np.zeros((d, d), dtype=np.int64)
    for i in range(d):
        p = diagram.vertex(i)
        if p.is_one():
            raise InvalidDiagramError(f"Vertex {i + 1} has label 1", vertex=i + 1)
        cartan[i, i] = 2
        for j in range(d):
            if i == j:
                continue
            r = diagram.edge(i, j)
            a = cartan_integer_of(p, r)
            if a is None or r != p**a:
                return None
            cartan[i, j] = a
    return cartan


def _component_type(cartan: np.ndarray, nodes: list[int]) -> str | None:
    n = len(nodes)
    if n == 1:
        return "A_1"
    bonds: dict[tuple[int, int], int] = {}
    degree = dict.fromkeys(nodes, 0)
    for a_idx, i in enumerate(nodes):
        for j in nodes[a_idx + 1 :]:
            if cartan[i, j] == 0 and cartan[j, i] == 0:
                continue
            if cartan[i, j] == 0 or cartan[j, i] == 0:
                return None
            bonds[(i, j)] = int(cartan[i, j] * cartan[j, i])
            degree[i] += 1
            degree[j] += 1
    if len(bonds) != n - 1 or any(v > 3 for v in bonds.values()):
        return None

    multiple = [(edge, v) for edge, v in bonds.items() if v > 1]
    if not multiple:
        branch = [v for v in nodes if degree[v] >= 3]
        if not branch:
            return f"A_{n}"
        if len(branch) > 1 or degree[branch[0]] != 3:
            return None
        arms = sorted(_arm_lengths(cartan, nodes, branch[0]))
        if arms[:2] == [1, 1]:
            return f"D_{n}"
        if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
            return f"E_{n}"
        return None

    if len(multiple) > 1 or max(degree.values()) > 2:
        return None
    (i, j), value = multiple[0]
    if value == 3:
        return "G_2" if n == 2 else None
    if n == 2:
        return "B_2"
    # the row of the short root carries the -2
    short, long_ = (i, j) if cartan[i, j] == -2 else (j, i)
    if degree[short] == 1:
        return f"B_{n}"
    if degree[long_] == 1:
        return f"C_{n}"
    return "F_4" if n == 4 else None


def _arm_lengths(cartan: np.ndarray, nodes: list[int], center: int) -> list[int]:
    lengths = []
    node_set = set(nodes)
    for start in nodes:
        if start == center or cartan[center, start] == 0:
            continue
        length, previous, current = 1, center, start
        while True:
            following = [
                k
                for k in node_set
                if k not in (previous, current) and cartan[current, k] != 0
            ]
            if not following:
                break
            previous, current = current, following[0]
            length += 1
        lengths.append(length)
    return lengths


def cartan_type_name(cartan: np.ndarray) -> str | None:
    """Finite-type name such as ``A_4`` or ``B_2 x A_1``; None if not of finite type."""
    d = cartan.shape[0]
    adjacency = {
        (i, j) for i in range(d) for j in range(d) if i != j and cartan[i, j] != 0
    }
    names = []
    for nodes in component_sets(d, adjacency):
        name = _component_type(cartan, sorted(nodes))
        if name is None:
            return None
        names.append(name)
    return " x ".join(names)


def _label(scalar: Scalar) -> tuple[int, int]:
    return (scalar.free_exp, scalar.tor_exp)


def canonical_key_from_labels(
    dim: int,
    torsion: int,
    vertices: Sequence[tuple[int, int]],
    edges: Sequence[Sequence[tuple[int, int]]],
) -> DiagramKey:
    """Canonical form of a labelled diagram given as exponent pairs.

    Vertices are ordered by iterated neighbourhood refinement of their labels;
    ties are broken by the lexicographically smallest edge table over the
    permutations inside each colour class.
    """
    colors = _refine_colors(dim, vertices, edges)
    order = sorted(range(dim), key=lambda v: colors[v])
    groups = [list(g) for _, g in groupby(order, key=lambda v: colors[v])]

    best: tuple[tuple[int, int], ...] | None = None
    for blocks in product(*(permutations(g) for g in groups)):
        perm = [v for block in blocks for v in block]
        table = tuple(
            tuple(edges[perm[a]][perm[b]]) for a in range(dim) for b in range(a + 1, dim)
        )
        if best is None or table < best:
            best = table
    ordered = tuple(tuple(vertices[v]) for v in order)
    return (dim, torsion, ordered, best or ())


def _refine_colors(
    dim: int,
    vertices: Sequence[tuple[int, int]],
    edges: Sequence[Sequence[tuple[int, int]]],
) -> list[int]:
    signature: list[tuple] = [tuple(vertices[v]) for v in range(dim)]
    colors = _rank(signature)
    classes = len(set(colors))
    while True:
        signature = [
            (
                colors[v],
                tuple(
                    sorted(
                        (tuple(edges[v][w]), colors[w])
                        for w in range(dim)
                        if w != v and tuple(edges[v][w]) != _ONE
                    )
                ),
            )
            for v in range(dim)
        ]
        refined = _rank(signature)
        if len(set(refined)) == classes:
            return colors
        colors = refined
        classes = len(set(colors))


def _rank(signature: list[tuple]) -> list[int]:
    distinct = sorted(set(signature))
    index = {s: k for k, s in enumerate(distinct)}
    return [index[s] for s in signature]


def canonical_form(diagram: DynkinDiagram) -> DiagramKey:
    """Key identifying the diagram up to vertex permutation."""
    d = diagram.dim
    vertices = [_label(v) for v in diagram.vertices]
    edges = [
        [_label(diagram.edge(i, j)) if i != j else _ONE for j in range(d)]
        for i in range(d)
    ]
    return canonical_key_from_labels(d, diagram.torsion, vertices, edges)


def from_key(key: DiagramKey) -> DynkinDiagram:
    dim, torsion, vertex_labels, edge_labels = key
    vertices = [Scalar(f, t, torsion) for f, t in vertex_labels]
    edges: dict[tuple[int, int], Scalar] = {}
    position = 0
    for i in range(dim):
        for j in range(i + 1, dim):
            f, t = edge_labels[position]
            position += 1
            if (f, t) != _ONE:
                edges[(i, j)] = Scalar(f, t, torsion)
    return DynkinDiagram.from_labels(vertices, edges)


def diagrams_isomorphic(a: DynkinDiagram, b: DynkinDiagram) -> bool:
    return a.dim == b.dim and canonical_form(a) == canonical_form(b)


def build_simple_chain(spec: SimpleChainSpec) -> DynkinDiagram:
    """Reconstruct the labelled path graph of ``C(d, q; I)``."""
    d = spec.d
    q = spec.q
    q_inv = q.inverse()
    minus_one = Scalar(0, q.torsion // 2, q.torsion)
    chosen = set(spec.indices)

    # incident[k] is the product on the edge left of vertex k (1-based), with a
    # virtual edge before vertex 1 and after vertex d
    incident = [q if 1 in chosen else q_inv]
    incident += [q if i in chosen else q_inv for i in range(2, d + 1)]
    incident.append(q_inv)

    vertices = []
    for k in range(d):
        left, right = incident[k], incident[k + 1]
        vertices.append(minus_one if left != right else left.inverse())
    edges = {(k - 1, k): incident[k] for k in range(1, d)}
    return DynkinDiagram.from_labels(vertices, edges)


def read_simple_chain_symbol(diagram: DynkinDiagram) -> SimpleChainSpec | None:
    """Recover ``C(d, q; I)`` from a labelled path graph, if it is a simple chain.

    The path is read in the orientation that yields the lexicographically
    smallest symbol among those matching.
    """
    if diagram.dim < 2:
        return None
    order = path_order(diagram_graph(diagram))
    if order is None:
        return None

    matches: list[SimpleChainSpec] = []
    for orientation in (order, order[::-1]):
        oriented = diagram.relabel(orientation)
        spec = _chain_symbol_candidate(oriented)
        if spec is not None and build_simple_chain(spec) == oriented:
            matches.append(spec)
    if not matches:
        return None
    return min(matches, key=lambda s: (s.q, s.indices))


def _chain_symbol_candidate(diagram: DynkinDiagram) -> SimpleChainSpec | None:
    d = diagram.dim
    last = diagram.vertex(d - 1)
    q = diagram.edge(d - 2, d - 1) if last.is_minus_one() else last
    if q.is_one():
        return None
    indices = [i for i in range(2, d + 1) if diagram.edge(i - 2, i - 1) == q]
    first = diagram.vertex(0)
    e12 = diagram.edge(0, 1)
    if first.is_minus_one():
        if e12 != q:
            indices.insert(0, 1)
    elif e12 == q:
        indices.insert(0, 1)
    return SimpleChainSpec(d, q, tuple(indices))


def is_simple_chain(diagram: DynkinDiagram) -> bool:
    return read_simple_chain_symbol(diagram) is not None


def simple_chains_equivalent(a: SimpleChainSpec, b: SimpleChainSpec) -> bool:
    """Weyl equivalence of simple chains of equal length.

    ``C(d,q;I)`` and ``C(d,q';I')`` are equivalent iff ``q = q'`` and
    ``|I| = |I'|``, or ``q q' = 1`` and ``|I| + |I'| = d + 1``.
    """
    if a.d != b.d:
        return False
    if a.q == b.q and len(a.indices) == len(b.indices):
        return True
    return (a.q * b.q).is_one() and len(a.indices) + len(b.indices) == a.d + 1
