"""Necessary conditions for a diagram to come from an arithmetic root system.

Every check yields a ``PredicateReport``: a report is applicable when some
labelling of the diagram (vertex permutation or induced subgraph match)
satisfies the hypothesis, and satisfied when every applicable labelling
satisfies the conclusion. Forbidden shapes are applicable exactly when they
occur and are then never satisfied.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from itertools import permutations, product
from typing import TYPE_CHECKING

import numpy as np
from sympy import Matrix

from ..core.exceptions import InvalidDiagramError, PreconditionError, StateError
from ..models.diagram import BicharacterMatrix, DynkinDiagram
from ..models.scalar import Scalar, is_primitive_root, is_root_of_unity_in
from ..schemas.reports import PredicateReport
from ..utils.graph import diagram_graph, has_long_cycle, induced_matches, path_order, shape
from ..utils.notation import format_root
from .diagram_service import chi_of, detect_cartan_type, is_connected, to_dynkin

if TYPE_CHECKING:
    from collections.abc import Sequence

    from ..models.groupoid import GroupoidResult

logger = logging.getLogger(__name__)


def _as_diagram(source: BicharacterMatrix | DynkinDiagram) -> DynkinDiagram:
    return source if isinstance(source, DynkinDiagram) else to_dynkin(source)


class _Labels:
    """Labels of a diagram seen through a relabelling ``vertex k -> perm[k]``."""

    def __init__(self, diagram: DynkinDiagram, perm: Sequence[int]) -> None:
        self._diagram = diagram
        self._perm = perm
        self.one = Scalar(0, 0, diagram.torsion)
        self.minus_one = -self.one

    def v(self, k: int) -> Scalar:
        """Vertex label of the 1-based vertex ``k``."""
        return self._diagram.vertex(self._perm[k - 1])

    def e(self, k: int, m: int) -> Scalar:
        """Edge label between the 1-based vertices ``k`` and ``m``."""
        return self._diagram.edge(self._perm[k - 1], self._perm[m - 1])

    def is_m1(self, scalar: Scalar) -> bool:
        return scalar.is_minus_one()

    def describe(self) -> str:
        return "(" + ",".join(str(p + 1) for p in self._perm) + ")"


Clause = Callable[[_Labels], bool]


def _evaluate(
    name: str,
    labellings: Sequence[_Labels],
    hypothesis: Clause,
    conclusion: Clause,
) -> PredicateReport:
    applicable = [lab for lab in labellings if hypothesis(lab)]
    if not applicable:
        return PredicateReport(
            name=name, applicable=False, satisfied=True, detail="hypothesis never holds"
        )
    for lab in applicable:
        if not conclusion(lab):
            return PredicateReport(
                name=name,
                applicable=True,
                satisfied=False,
                detail=f"conclusion fails for labelling {lab.describe()}",
            )
    return PredicateReport(
        name=name,
        applicable=True,
        satisfied=True,
        detail=f"holds for {len(applicable)} labelling(s)",
    )


def _not_connected(names: Sequence[str]) -> list[PredicateReport]:
    return [
        PredicateReport(
            name=name, applicable=False, satisfied=True, detail="diagram is not connected"
        )
        for name in names
    ]


# ---------------------------------------------------------------- rank two


def rank2_neg_one_condition(source: BicharacterMatrix | DynkinDiagram) -> PredicateReport:
    """If ``q11 q12 q21 q22 = -1`` then one vertex is ``-1`` and absorbs the rest."""
    diagram = _as_diagram(source)
    if diagram.dim != 2:
        raise InvalidDiagramError("Rank-two condition needs a diagram of rank 2")
    name = "rank2_minus_one_product"
    if not is_connected(diagram):
        return _not_connected([name])[0]
    lab = _Labels(diagram, (0, 1))

    def hypothesis(x: _Labels) -> bool:
        return x.is_m1(x.v(1) * x.e(1, 2) * x.v(2))

    def conclusion(x: _Labels) -> bool:
        return (x.is_m1(x.v(1)) and (x.e(1, 2) * x.v(2)).is_one()) or (
            x.is_m1(x.v(2)) and (x.v(1) * x.e(1, 2)).is_one()
        )

    return _evaluate(name, [lab], hypothesis, conclusion)


# -------------------------------------------------------------- rank three


def _in(scalar: Scalar, *orders: int) -> bool:
    return is_root_of_unity_in(scalar, orders)


def _clause_i_hypothesis(x: _Labels) -> bool:
    return x.e(1, 3).is_one() and not any(x.is_m1(x.v(k)) for k in (1, 2, 3))


def _clause_i_special(x: _Labels) -> bool:
    for i in (1, 3):
        j = 4 - i
        if (
            is_primitive_root(x.v(i), 3)
            and _in(x.v(2), 6, 9)
            and _in(x.v(j), 6, 9)
            and (x.v(j) * x.e(2, j)).is_one()
            and (x.v(2) * x.e(2, i)).is_one()
            and (
                (x.e(2, j) * x.v(2)).is_one() or (x.e(2, j) * x.v(2) ** 2).is_one()
            )
        ):
            return True
    return False


def _clause_ii_hypothesis(x: _Labels) -> bool:
    return not any(x.e(a, b).is_one() for a, b in ((1, 2), (1, 3), (2, 3)))


def _clause_ii_conclusion(x: _Labels) -> bool:
    if not (x.e(1, 2) * x.e(1, 3) * x.e(2, 3)).is_one():
        return False
    if not any(x.is_m1(x.v(k)) for k in (1, 2, 3)):
        return False
    if x.is_m1(x.v(1)) and not x.is_m1(x.v(2)) and not x.is_m1(x.v(3)):
        square = x.e(1, 2) ** 2
        return (
            square == x.e(1, 3) ** 2
            and is_primitive_root(square, 3)
            and (x.e(1, 2) * x.v(2)).is_one()
            and (x.e(1, 3) * x.v(3)).is_one()
        )
    return True


def _clause_iii_hypothesis(x: _Labels) -> bool:
    return (
        x.e(1, 3).is_one()
        and x.is_m1(x.v(2))
        and (x.v(1) * x.e(1, 2)).is_one()
        and not x.is_m1(x.v(1))
        and not x.is_m1(x.v(3))
    )


def _clause_iii_conclusion(x: _Labels) -> bool:
    v1, v3, e23 = x.v(1), x.v(3), x.e(2, 3)
    if (e23 * v3).is_one():
        return True
    if (e23 * v3**2).is_one() and (
        (v1 * v3**2).is_one() or x.is_m1(v1 * v3**3)
    ):
        return True
    return v3 == -v1 and is_primitive_root(v3, 3) and (x.is_m1(e23) or e23 == -v3)


def _clause_iv_hypothesis(x: _Labels) -> bool:
    return (
        x.e(1, 3).is_one()
        and x.is_m1(x.v(3))
        and not x.is_m1(x.v(1))
        and not x.is_m1(x.v(2))
        and (x.v(1) * x.e(1, 2)).is_one()
        and (x.e(1, 2) * x.v(2)).is_one()
    )


def _clause_iv_conclusion(x: _Labels) -> bool:
    v2, e23 = x.v(2), x.e(2, 3)
    if (v2 * e23).is_one():
        return True
    return (v2**2 * e23).is_one() and _in(x.v(1), 3, 4, 6)


def _clause_v_hypothesis(x: _Labels) -> bool:
    return (
        x.e(1, 3).is_one()
        and x.is_m1(x.v(3))
        and (x.e(1, 2) * x.v(2)).is_one()
        and (x.v(2) * x.e(2, 3)).is_one()
    )


def _clause_v_conclusion(x: _Labels) -> bool:
    v1, v2 = x.v(1), x.v(2)
    if v1 == v2 or v1**2 == v2 or x.is_m1(v1):
        return True
    return is_primitive_root(v1, 3) and x.is_m1(v1 * v2)


def _clause_vi_hypothesis(x: _Labels) -> bool:
    return (
        x.e(1, 3).is_one()
        and x.is_m1(x.v(1))
        and x.is_m1(x.v(2))
        and not x.is_m1(x.v(3))
    )


def _clause_vi_conclusion(x: _Labels) -> bool:
    e12, e23, v3 = x.e(1, 2), x.e(2, 3), x.v(3)
    if x.is_m1(e12) and is_primitive_root(v3, 3) and (e23**2 * v3).is_one():
        return True
    if (e23 * v3).is_one() and (
        x.is_m1(e12)
        or x.is_m1(e12 * e23)
        or (e12**2 * e23).is_one()
        or (e12**3 * e23).is_one()
    ):
        return True
    return (e12 * e23).is_one() and (
        (e23 * v3).is_one() or (e23 * v3**2).is_one() or e23 == -v3
    )


def _clause_vii_hypothesis(x: _Labels) -> bool:
    v2 = x.v(2)
    return (
        x.e(1, 3).is_one()
        and not x.is_m1(v2)
        and not (x.e(1, 2) * v2).is_one()
        and not (v2 * x.e(2, 3)).is_one()
    )


def _clause_vii_conclusion(x: _Labels) -> bool:
    v2 = x.v(2)
    if not x.is_m1(x.e(1, 2) * v2 * x.e(2, 3)):
        return False
    for i in (1, 3):
        j = 4 - i
        if (
            _in(v2, 3, 6)
            and x.is_m1(x.v(i))
            and (v2**2 * x.e(2, i)).is_one()
            and x.e(2, j) == -v2
            and (x.is_m1(x.v(j)) or x.v(j) == -v2.inverse())
        ):
            return True
    return False


def _clause_viii_hypothesis(x: _Labels) -> bool:
    return (
        x.e(1, 3).is_one()
        and x.is_m1(x.v(1))
        and x.is_m1(x.v(3))
        and (x.e(1, 2) * x.v(2)).is_one()
        and not x.is_m1(x.v(2))
    )


def _clause_viii_conclusion(x: _Labels) -> bool:
    v2, e23 = x.v(2), x.e(2, 3)
    if (v2 * e23).is_one():
        return True
    if x.is_m1(e23) and _in(v2, 3, 4, 6):
        return True
    return e23**2 == v2**2 and is_primitive_root(v2**2, 3)


def _clause_ix_conclusion(x: _Labels) -> bool:
    for i in (1, 2, 3):
        if x.is_m1(x.v(i)):
            continue
        if not any((x.v(i) * x.e(i, j)).is_one() for j in (1, 2, 3) if j != i):
            return False
    return True


RANK3_CLAUSES = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix")


def rank3_conditions(source: BicharacterMatrix | DynkinDiagram) -> list[PredicateReport]:
    """Evaluate the nine rank-three clauses over all labellings of the vertices."""
    diagram = _as_diagram(source)
    if diagram.dim != 3:
        raise InvalidDiagramError("Rank-three conditions need a diagram of rank 3")
    names = [f"rank3_clause_{c}" for c in RANK3_CLAUSES]
    if not is_connected(diagram):
        return _not_connected(names)

    labellings = [_Labels(diagram, perm) for perm in permutations(range(3))]
    cartan = not any(v.is_one() for v in diagram.vertices) and (
        detect_cartan_type(diagram) is not None
    )

    def clause_i(x: _Labels) -> bool:
        return cartan or _clause_i_special(x)

    checks: list[tuple[Clause, Clause]] = [
        (_clause_i_hypothesis, clause_i),
        (_clause_ii_hypothesis, _clause_ii_conclusion),
        (_clause_iii_hypothesis, _clause_iii_conclusion),
        (_clause_iv_hypothesis, _clause_iv_conclusion),
        (_clause_v_hypothesis, _clause_v_conclusion),
        (_clause_vi_hypothesis, _clause_vi_conclusion),
        (_clause_vii_hypothesis, _clause_vii_conclusion),
        (_clause_viii_hypothesis, _clause_viii_conclusion),
        (_clause_ii_hypothesis, _clause_ix_conclusion),
    ]
    return [
        _evaluate(name, labellings, hypothesis, conclusion)
        for name, (hypothesis, conclusion) in zip(names, checks, strict=True)
    ]


# ---------------------------------------------------------- graph shapes

# vertex numbering of each pattern follows the pictures: paw has tail 0-1 and
# triangle 1-2-3, claw is centred at 1, tent has apex 2 over the base 1-3
_K4 = shape([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
_DIAMOND = shape([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
_CYCLE4 = shape([(0, 1), (1, 2), (2, 3), (3, 0)])
_PAW = shape([(0, 1), (1, 2), (1, 3), (2, 3)])
_CLAW = shape([(0, 1), (1, 2), (1, 3)])
_TENT = shape([(0, 1), (1, 2), (1, 3), (2, 3), (3, 4)])
_UFO = shape([(0, 1), (1, 2), (2, 3), (1, 4), (2, 4), (4, 5)])
_PATH5 = shape([(0, 1), (1, 2), (2, 3), (3, 4)])


def _octopus(n: int, closed: bool) -> object:
    """Two leaves at each end of a path on ``n - 4`` vertices."""
    spine = list(range(2, n - 2))
    edges = [(0, spine[0]), (1, spine[0])]
    edges += list(zip(spine, spine[1:], strict=False))
    edges += [(spine[-1], n - 2), (spine[-1], n - 1)]
    if closed:
        edges.append((n - 2, n - 1))
    return shape(edges, n)


def _d_shape(n: int) -> object:
    """Path ``0 .. n-3`` with two leaves ``n-2`` and ``n-1`` on vertex ``n-3``."""
    edges = [(k, k + 1) for k in range(n - 3)]
    edges += [(n - 3, n - 2), (n - 3, n - 1)]
    return shape(edges, n)


def _matches(diagram: DynkinDiagram, pattern: object) -> list[_Labels]:
    graph = diagram_graph(diagram)
    labellings = []
    for mapping in induced_matches(graph, pattern):
        perm = [mapping[k] for k in range(len(mapping))]
        labellings.append(_Labels(diagram, perm))
    return labellings


def _forbidden(name: str, labellings: Sequence[_Labels]) -> PredicateReport:
    if not labellings:
        return PredicateReport(
            name=name, applicable=False, satisfied=True, detail="shape does not occur"
        )
    return PredicateReport(
        name=name,
        applicable=True,
        satisfied=False,
        detail=f"forbidden shape at vertices {labellings[0].describe()}",
    )


def _always(_: _Labels) -> bool:
    return True


def _paw_tail(x: _Labels) -> bool:
    # tail edge q, triangle edges r, s from the tail's neighbour
    q, r, s, v2 = x.e(1, 2), x.e(2, 3), x.e(2, 4), x.v(2)
    if x.is_m1(v2) and ((q * r).is_one() or (q * s).is_one()):
        return True
    return (v2 * q).is_one() and (q == r or q == s)


def _paw_minus_one(x: _Labels) -> bool:
    return x.is_m1(x.v(3)) or x.is_m1(x.v(4))


def _claw(x: _Labels) -> bool:
    q, r, s, v2 = x.e(1, 2), x.e(2, 3), x.e(2, 4), x.v(2)
    if x.is_m1(v2) and sum(p.is_one() for p in (q * r, q * s, r * s)) >= 2:
        return True
    return sum((v2 * p).is_one() for p in (q, r, s)) >= 2


def _tent_apex(x: _Labels) -> bool:
    return x.is_m1(x.v(3))


def _d_shape_conclusion(n: int) -> Clause:
    i = n - 2  # 1-based branch vertex; leaves i + 1 and i + 2

    def conclusion(x: _Labels) -> bool:
        t = x.e(i, i + 2)
        allowed = {t, t.inverse(), x.minus_one}
        if any(x.v(j) not in allowed for j in range(1, i + 3)):
            return False
        if any(x.e(j, j + 1) not in (t, t.inverse()) for j in range(1, i + 1)):
            return False
        for j in range(1, i):
            if x.is_m1(x.v(j)):
                following = x.v(j + 1)
                if not (
                    x.is_m1(following) or (x.e(j, j + 1) * following).is_one()
                ):
                    return False
        return True

    return conclusion


def _five_chain_factor(x: _Labels) -> bool:
    p, r, s, t = x.e(1, 2), x.e(2, 3), x.e(3, 4), x.e(4, 5)
    return (x.v(2) ** 2 * p * r).is_one() or (x.v(4) ** 2 * s * t).is_one()


def _five_chain_middle_hypothesis(x: _Labels) -> bool:
    p, r, s, t = x.e(1, 2), x.e(2, 3), x.e(3, 4), x.e(4, 5)
    return (
        (x.v(2) ** 2 * p * r).is_one()
        and (x.v(4) ** 2 * s * t).is_one()
        and not (x.v(3) ** 2 * r * s).is_one()
    )


def _five_chain_middle_conclusion(x: _Labels) -> bool:
    p, r, s, t = x.e(1, 2), x.e(2, 3), x.e(3, 4), x.e(4, 5)
    v2, v3, v4, v5 = x.v(2), x.v(3), x.v(4), x.v(5)
    middle = v3**2 * r * s
    if not (p == s or (p * s).is_one()):
        return False
    if not (r == t or (r * t).is_one()):
        return False
    if middle not in (r, r.inverse()):
        return False
    allowed = {x.minus_one, middle.inverse()}
    if v2 * r * v3 not in allowed or v3 * s * v4 not in allowed:
        return False
    return not (v3 * s * v4 == t and not (v5 * t).is_one())


def _path_defect_report(diagram: DynkinDiagram) -> PredicateReport:
    name = "path_defect_set"
    order = path_order(diagram_graph(diagram))
    if diagram.dim < 5 or order is None:
        return PredicateReport(
            name=name, applicable=False, satisfied=True, detail="not a path graph"
        )
    x = _Labels(diagram, order)
    d = diagram.dim
    defects = [
        i
        for i in range(2, d)
        if not (x.v(i) ** 2 * x.e(i - 1, i) * x.e(i, i + 1)).is_one()
    ]
    ok = len(defects) <= 2 and all(abs(a - b) <= 1 for a in defects for b in defects)
    return PredicateReport(
        name=name,
        applicable=True,
        satisfied=ok,
        detail=f"defect positions along the path: {defects}",
    )


def structural_filters(source: BicharacterMatrix | DynkinDiagram) -> list[PredicateReport]:
    """Graph-shape conditions on induced subgraphs of a connected diagram of rank >= 4."""
    diagram = _as_diagram(source)
    d = diagram.dim
    if d < 4:
        return []
    graph = diagram_graph(diagram)
    long_cycle = has_long_cycle(graph)
    reports = [
        _forbidden("no_complete_k4", _matches(diagram, _K4)),
        _forbidden("no_diamond", _matches(diagram, _DIAMOND)),
        _forbidden("no_induced_4cycle", _matches(diagram, _CYCLE4)),
        _evaluate("paw_tail_condition", _matches(diagram, _PAW), _always, _paw_tail),
        _evaluate(
            "paw_triangle_has_minus_one",
            _matches(diagram, _PAW),
            _always,
            _paw_minus_one,
        ),
        _evaluate("claw_condition", _matches(diagram, _CLAW), _always, _claw),
        PredicateReport(
            name="no_long_cycle",
            applicable=long_cycle,
            satisfied=not long_cycle,
            detail="cycle on four or more vertices" if long_cycle else "no long cycle",
        ),
    ]
    if d < 5:
        return reports

    octopus: list[_Labels] = []
    for n in range(5, d + 1):
        for closed in (False, True):
            octopus.extend(_matches(diagram, _octopus(n, closed)))
    d_shapes = [
        _evaluate(
            f"d_shape_labels_{n}",
            _matches(diagram, _d_shape(n)),
            _always,
            _d_shape_conclusion(n),
        )
        for n in range(4, d + 1)
    ]
    d_shape_failures = [r for r in d_shapes if r.applicable and not r.satisfied]
    d_shape_report = PredicateReport(
        name="d_shape_labels",
        applicable=any(r.applicable for r in d_shapes),
        satisfied=not d_shape_failures,
        detail=d_shape_failures[0].detail if d_shape_failures else "labels consistent",
    )
    path5 = _matches(diagram, _PATH5)
    reports += [
        _evaluate("tent_apex_minus_one", _matches(diagram, _TENT), _always, _tent_apex),
        _forbidden("no_octopus", octopus),
        _forbidden("no_ufo", _matches(diagram, _UFO) if d >= 6 else []),
        d_shape_report,
        _evaluate("five_chain_factor", path5, _always, _five_chain_factor),
        _path_defect_report(diagram),
        _evaluate(
            "five_chain_middle",
            path5,
            _five_chain_middle_hypothesis,
            _five_chain_middle_conclusion,
        ),
    ]
    return reports


def check_all(source: BicharacterMatrix | DynkinDiagram) -> list[PredicateReport]:
    """All criteria relevant for the rank of the diagram."""
    diagram = _as_diagram(source)
    if diagram.dim == 2:
        return [rank2_neg_one_condition(diagram)]
    if diagram.dim == 3:
        return rank3_conditions(diagram)
    return structural_filters(diagram)


def violations(reports: Sequence[PredicateReport]) -> list[PredicateReport]:
    return [r for r in reports if r.applicable and not r.satisfied]


# ------------------------------------------------------------ subsystems


def root_subsystem(
    matrix: BicharacterMatrix,
    result: GroupoidResult,
    roots: Sequence[Sequence[int]],
    mode: str = "delta",
) -> BicharacterMatrix:
    """Bicharacter ``p_kl = chi(alpha_k, alpha_l)`` of a root subsystem.

    Args:
        matrix: The ambient bicharacter
        result: Its full and finite exploration
        roots: Linearly independent positive roots ``alpha_1 .. alpha_r``
        mode: ``"delta"`` checks that ``alpha_j - sum m_i alpha_i`` avoids the
            other roots exactly; ``"cone"`` checks the sufficient condition that
            it avoids ``N_0 E`` (except ``alpha_j``) and ``-N_0 E``

    Raises:
        StateError: If ``result`` is not full and finite
        PreconditionError: If the roots are dependent or a check fails
    """
    if not result.is_full_finite:
        raise StateError("Root subsystems need a full_finite exploration")
    if mode not in ("delta", "cone"):
        raise PreconditionError(f"Unknown subsystem check mode {mode!r}")
    d = matrix.dim
    alphas = [tuple(int(x) for x in v) for v in roots]
    if not alphas or any(len(v) != d for v in alphas):
        raise PreconditionError(f"Roots must be nonempty vectors of length {d}")
    positive = {v for v in result.roots if all(x >= 0 for x in v)}
    for j, alpha in enumerate(alphas, start=1):
        if alpha not in positive:
            raise PreconditionError(
                f"Vector {format_root(alpha)} is not a positive root", j=j
            )
    if Matrix(alphas).rank() != len(alphas):
        raise PreconditionError("Roots are linearly dependent")

    check = _delta_check if mode == "delta" else _cone_check
    for j in range(1, len(alphas)):
        if not check(alphas[j], alphas[:j], result.roots):
            raise PreconditionError(
                f"Root {j + 1} ({format_root(alphas[j])}) is representable "
                f"through the earlier roots",
                j=j + 1,
                mode=mode,
            )

    entries = [[chi_of(matrix, a, b) for b in alphas] for a in alphas]
    return BicharacterMatrix.from_entries(entries)


def _delta_check(
    alpha: tuple[int, ...],
    earlier: Sequence[tuple[int, ...]],
    roots: frozenset[tuple[int, ...]],
) -> bool:
    vectors = Matrix(earlier).T
    # the earlier roots are independent, so some r coordinates determine m
    _, pivots = vectors.T.rref()
    inverse = vectors.extract(list(pivots), list(range(vectors.cols))).inv()
    for beta in roots:
        if beta == alpha:
            continue
        difference = [a - b for a, b in zip(alpha, beta, strict=True)]
        m = inverse * Matrix([difference[k] for k in pivots])
        if any(not x.is_integer or x < 0 for x in m):
            continue
        if list(vectors * m) == difference:
            return False
    return True


def _cone_check(
    alpha: tuple[int, ...],
    earlier: Sequence[tuple[int, ...]],
    roots: frozenset[tuple[int, ...]],
) -> bool:
    del roots
    covered = {k for v in earlier for k, x in enumerate(v) if x}
    support = {k for k, x in enumerate(alpha) if x}
    if support <= covered:
        # large multiples push alpha_j - sum m_i alpha_i into -N_0 E
        return False
    bounds = [
        min(alpha[k] // v[k] for k in range(len(v)) if v[k]) for v in earlier
    ]
    target = np.array(alpha, dtype=np.int64)
    vectors = np.array(earlier, dtype=np.int64)
    for m in product(*(range(b + 1) for b in bounds)):
        if not any(m):
            continue
        if np.all(target - np.array(m, dtype=np.int64) @ vectors >= 0):
            return False
    return True
