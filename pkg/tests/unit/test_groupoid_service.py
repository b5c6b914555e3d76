"""Unit tests for Weyl groupoid exploration."""

import random
from itertools import combinations

import pytest
from sympy import Matrix

from src.core.exceptions import (
    InvalidDiagramError,
    ReflectionUndefinedError,
    StateError,
)
from src.models.catalog import TableName
from src.models.diagram import BicharacterMatrix, SimpleChainSpec
from src.models.groupoid import Basis, ExplorationCaps, ReflectionWord, Verdict
from src.services.diagram_service import (
    build_simple_chain,
    canonical_form,
    cartan_type_name,
    detect_cartan_type,
    restrict,
    twist,
)
from src.services.groupoid_service import WeylGroupoidExplorer
from src.utils.notation import format_basis


def matrix(diagram) -> BicharacterMatrix:
    return BicharacterMatrix.from_diagram(diagram)


def positive_at(basis: Basis, roots) -> set[tuple[int, ...]]:
    """Roots with non-negative coordinates in ``basis``."""
    inverse = Matrix(basis.vectors).T.inv()
    return {root for root in roots if all(x >= 0 for x in inverse * Matrix(list(root)))}


def assert_reflection_swaps_one_root(explorer, m, result):
    for basis in result.bases():
        before = positive_at(basis, result.roots)
        for i, f in enumerate(basis.vectors):
            after = positive_at(explorer.reflect(m, basis, i), result.roots)
            assert after == (before - {f}) | {tuple(-x for x in f)}


@pytest.fixture
def a2(q, path):
    return matrix(path([q, q], [q.inverse()]))


@pytest.fixture
def row6(q):
    """Simple chain C(4,q;1): vertices -1, q, q, q along a path with edges q^-1."""
    return matrix(build_simple_chain(SimpleChainSpec(4, q, (1,))))


class TestReflectionWord:
    def test_from_printed(self):
        word = ReflectionWord.from_printed([4, 3, 2, 1])
        assert word.letters == (3, 2, 1, 0)
        assert word.application_order() == (0, 1, 2, 3)
        assert str(word) == "s4 s3 s2 s1"
        assert len(word) == 4

    def test_letters_are_one_based(self):
        with pytest.raises(InvalidDiagramError):
            ReflectionWord.from_printed([0, 1])

    def test_rank_check(self):
        with pytest.raises(InvalidDiagramError):
            ReflectionWord.from_printed([5]).check_rank(4)

    def test_empty_word(self):
        assert str(ReflectionWord()) == "id"


class TestReflect:
    """Tests for single reflections."""

    def test_a2_reflection(self, explorer, a2):
        basis = explorer.reflect(a2, Basis.identity(2), 0)
        assert basis.vectors == ((-1, 0), (1, 1))

    def test_reflection_is_involution(self, explorer, row6):
        start = Basis.identity(4)
        for i in range(4):
            once = explorer.reflect(row6, start, i)
            assert explorer.reflect(row6, once, i) == start

    def test_minus_one_vertex(self, explorer, row6):
        basis = explorer.reflect(row6, Basis.identity(4), 0)
        assert format_basis(basis) == "(-1,12,3,4)"

    def test_cartan_integer_at_basis(self, explorer, a2):
        assert explorer.cartan_integer(a2, Basis.identity(2), 0, 1) == -1
        assert explorer.cartan_integer(a2, Basis.identity(2), 1, 1) == 2

    def test_index_out_of_range(self, explorer, a2):
        with pytest.raises(InvalidDiagramError):
            explorer.reflect(a2, Basis.identity(2), 2)


class TestExplore:
    """Tests for breadth-first exploration and its verdicts."""

    def test_a2(self, explorer, a2):
        result = explorer.explore(a2)
        assert result.verdict is Verdict.FULL_FINITE
        assert result.num_bases == 6
        assert explorer.positive_roots(result) == {(1, 0), (0, 1), (1, 1)}

    def test_a4(self, explorer, a4):
        result = explorer.explore(matrix(a4))
        assert result.is_full_finite
        assert result.num_bases == 120
        assert len(explorer.positive_roots(result)) == 10

    def test_d4(self, explorer, d4):
        result = explorer.explore(matrix(d4))
        assert result.is_full_finite
        assert len(explorer.positive_roots(result)) == 12

    def test_rank_one(self, explorer, q):
        result = explorer.explore(BicharacterMatrix.from_entries([[q]]))
        assert result.num_bases == 2
        assert result.depth == 1
        assert explorer.positive_roots(result) == {(1,)}

    def test_roots_split_into_positive_and_negative(self, explorer, row6):
        result = explorer.explore(row6)
        assert result.is_full_finite
        positive = explorer.positive_roots(result)
        assert result.roots == positive | {tuple(-x for x in v) for v in positive}

    def test_every_basis_splits_the_roots(self, explorer, a2):
        result = explorer.explore(a2)
        for basis in result.bases():
            for root in result.roots:
                coords = explorer.coordinates(basis, root)
                assert all(c >= 0 for c in coords) or all(c <= 0 for c in coords)

    def test_reflection_exchanges_one_positive_root(self, explorer, a2, row6, a4):
        for m in (a2, row6, matrix(a4)):
            result = explorer.explore(m)
            assert_reflection_swaps_one_root(explorer, m, result)

    @pytest.mark.slow
    def test_catalog_explorations_split_and_exchange_roots(
        self, explorer, repository, catalog
    ):
        for row in repository.rows(TableName.RANK4):
            m = catalog.instantiate(row, 1, param=catalog.sample_params(row)[0])
            result = explorer.explore(m)
            assert result.is_full_finite, row.label
            for basis in result.bases():
                before = positive_at(basis, result.roots)
                assert before | {tuple(-x for x in v) for v in before} == result.roots
            assert_reflection_swaps_one_root(explorer, m, result)

    def test_undefined_cartan_integer(self, explorer, q, path):
        result = explorer.explore(matrix(path([q, q], [q])))
        assert result.verdict is Verdict.NOT_FULL
        assert result.failure is not None
        assert result.failure.basis == Basis.identity(2)

    def test_positive_roots_need_finite_result(self, explorer, q, path):
        result = explorer.explore(matrix(path([q, q], [q])))
        with pytest.raises(StateError):
            explorer.positive_roots(result)

    def test_infinite_cartan_type_hits_cap(self, q, path):
        explorer = WeylGroupoidExplorer(caps=ExplorationCaps(max_bases=1000, max_coeff=50))
        result = explorer.explore(matrix(path([q, q], [q**-3])))
        assert result.verdict is Verdict.CAP_EXCEEDED

    @pytest.mark.parametrize(
        ("max_bases", "verdict"), [(6, Verdict.CAP_EXCEEDED), (7, Verdict.FULL_FINITE)]
    )
    def test_base_cap_is_reached_at_max_bases(self, a2, max_bases, verdict):
        explorer = WeylGroupoidExplorer(caps=ExplorationCaps(max_bases=max_bases, max_coeff=50))
        assert explorer.explore(a2).verdict is verdict

    def test_vertex_one_rejected(self, explorer, config, q, path):
        with pytest.raises(InvalidDiagramError):
            explorer.explore(matrix(path([config.one(), q], [q.inverse()])))

    def test_twist_invariance(self, explorer, config, a4):
        m = matrix(a4)
        t = config.root(5) * config.generic(2)
        twisted = twist(m, 1, 3, t)
        first, second = explorer.explore(m), explorer.explore(twisted)
        assert first.roots == second.roots
        assert first.num_bases == second.num_bases
        assert first.verdict is second.verdict

    def test_restriction_gives_sub_root_system(self, explorer, a4):
        m = matrix(a4)
        full = explorer.explore(m)
        sub = explorer.explore(restrict(m, [0, 1, 2]))
        assert sub.roots == {v[:3] for v in full.roots if v[3] == 0}

    def test_restriction_of_catalog_entries(self, explorer, repository, catalog):
        rng = random.Random(5)
        rows = repository.rows(TableName.RANK4)
        for _ in range(100):
            row = rng.choice(rows)
            which = rng.randint(1, len(row.diagrams))
            param = rng.choice(catalog.sample_params(row))
            m = catalog.instantiate(row, which, param=param)
            subset = rng.sample(range(4), rng.randint(1, 3))
            full = explorer.explore(m)
            sub = explorer.explore(restrict(m, subset))
            outside = [k for k in range(4) if k not in subset]
            expected = {
                tuple(v[k] for k in subset)
                for v in full.roots
                if all(v[k] == 0 for k in outside)
            }
            assert sub.roots == expected, (row.label, which, subset)

    @pytest.mark.parametrize(
        ("row", "cartan", "positive"), [(2, "B_4", 16), (3, "C_4", 16), (4, "F_4", 24)]
    )
    def test_classical_rank_four_rows(
        self, explorer, repository, catalog, row, cartan, positive
    ):
        entry = repository.row(TableName.RANK4, row)
        for param in catalog.sample_params(entry):
            diagram = catalog.instantiate_diagram(entry, 1, param=param)
            assert cartan_type_name(detect_cartan_type(diagram)) == cartan
            result = explorer.explore(matrix(diagram))
            assert len(explorer.positive_roots(result)) == positive

    def test_deterministic(self, caps, row6):
        first = WeylGroupoidExplorer(caps=caps).explore(row6)
        second = WeylGroupoidExplorer(caps=caps).explore(row6)
        assert (first.basis_stack == second.basis_stack).all()
        assert first.depth == second.depth


class TestWords:
    """Tests for reflection words and the finiteness induction."""

    def test_row6_word(self, explorer, row6):
        final, trace = explorer.apply_word(row6, ReflectionWord.from_printed([4, 3, 2, 1]))
        assert [format_basis(b) for b in trace] == [
            "(1,2,3,4)",
            "(-1,12,3,4)",
            "(2,-12,123,4)",
            "(2,3,-123,1234)",
            "(2,3,4,-1234)",
        ]
        assert final == trace[-1]

    def test_empty_word(self, explorer, a2):
        final, trace = explorer.apply_word(a2, ReflectionWord())
        assert final == Basis.identity(2)
        assert trace == [Basis.identity(2)]

    def test_undefined_reflection_reports_position(self, explorer, q, path):
        m = matrix(path([q, q], [q]))
        with pytest.raises(ReflectionUndefinedError) as exc_info:
            explorer.apply_word(m, ReflectionWord.from_printed([1]))
        assert exc_info.value.position == 0

    def test_terminal_shape(self, explorer):
        basis = Basis.from_vectors([(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (-1, -1, -1, -1)])
        assert explorer.terminal_shape(basis) == (0, (1, 1, 1, 1))
        assert explorer.terminal_shape(Basis.identity(4)) is None

    def test_row6_word_witnesses_finiteness(self, explorer, row6):
        word = ReflectionWord.from_printed([4, 3, 2, 1])
        assert explorer.witnesses_finiteness_induction(row6, word)

    def test_identity_word_is_no_witness(self, explorer, a4):
        assert not explorer.witnesses_finiteness_induction(matrix(a4), ReflectionWord())

    def test_word_search_at_rank_two(self, explorer, a2):
        word = explorer.find_induction_word(a2, max_length=6)
        assert word is not None
        assert len(word) == 2
        assert explorer.witnesses_finiteness_induction(a2, word)


class TestEquivalence:
    """Tests for Weyl equivalence and diagram orbits."""

    def test_same_row_diagrams(self, explorer, q, row6):
        other = matrix(build_simple_chain(SimpleChainSpec(4, q, (2,))))
        outcome = explorer.weyl_equivalent(row6, other)
        assert outcome.equivalent
        assert outcome.shared is not None

    def test_distinct_cartan_types(self, explorer, a4, d4):
        assert not explorer.weyl_equivalent(matrix(a4), matrix(d4)).equivalent

    def test_reflexive_and_symmetric(self, explorer, q, row6):
        other = matrix(build_simple_chain(SimpleChainSpec(4, q, (3,))))
        assert explorer.weyl_equivalent(row6, row6).equivalent
        assert (
            explorer.weyl_equivalent(row6, other).equivalent
            == explorer.weyl_equivalent(other, row6).equivalent
        )

    def test_inverse_parameter_chains(self, explorer, q):
        first = matrix(build_simple_chain(SimpleChainSpec(4, q, (1,))))
        second = matrix(build_simple_chain(SimpleChainSpec(4, q.inverse(), (1, 2, 3, 4))))
        assert explorer.weyl_equivalent(first, second).equivalent

    def test_non_finite_input(self, explorer, q, path, a4):
        with pytest.raises(StateError):
            explorer.weyl_equivalent(matrix(path([q, q], [q])), matrix(a4))

    def test_cartan_orbit_is_a_single_diagram(self, explorer, a4):
        orbit = explorer.orbit_diagrams(matrix(a4))
        assert orbit == {canonical_form(a4)}

    def test_orbit_contains_row_diagrams(self, explorer, q, row6):
        orbit = explorer.orbit_diagrams(row6)
        second = build_simple_chain(SimpleChainSpec(4, q, (2,)))
        assert canonical_form(second) in orbit
        assert explorer.has_path_representative(row6)

    def test_diagram_at_reflected_basis(self, explorer, q, path, a2):
        basis = explorer.reflect(a2, Basis.identity(2), 0)
        assert explorer.diagram_at(a2, basis) == path([q, q], [q.inverse()])

    def test_coordinates(self, explorer):
        basis = Basis.from_vectors([(-1, 0), (1, 1)])
        assert explorer.coordinates(basis, (0, 1)) == (1, 1)

    def test_coordinates_are_exact_for_large_entries(self, explorer):
        big = 3**33
        basis = Basis.from_vectors([(1, 0, 0), (big, 1, 0), (0, 0, 1)])
        assert explorer.coordinates(basis, (5 * big + 7, 5, 2)) == (7, 5, 2)

    def test_coordinates_must_be_integers(self, explorer):
        basis = Basis.from_vectors([(2, 0), (0, 1)])
        with pytest.raises(InvalidDiagramError):
            explorer.coordinates(basis, (1, 0))

    @pytest.mark.parametrize("order", [5, 7])
    @pytest.mark.parametrize("d", [3, 4, pytest.param(5, marks=pytest.mark.slow)])
    def test_simple_chain_classes(self, explorer, config, d, order):
        zeta = config.root(order)
        chains = [
            (p, indices, matrix(build_simple_chain(SimpleChainSpec(d, p, indices))))
            for p in (zeta, zeta.inverse())
            for size in range(d + 1)
            for indices in combinations(range(1, d + 1), size)
        ]
        for p, indices, m in chains:
            for p2, indices2, m2 in chains:
                same = p == p2 and len(indices) == len(indices2)
                mirrored = (p * p2).is_one() and len(indices) + len(indices2) == d + 1
                outcome = explorer.weyl_equivalent(m, m2)
                assert outcome.equivalent == (same or mirrored), (indices, indices2)
