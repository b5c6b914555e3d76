"""Unit tests for bicharacter matrices, diagrams and simple chains."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.exceptions import InvalidDiagramError
from src.models.diagram import BicharacterMatrix, DynkinDiagram, SimpleChainSpec
from src.models.scalar import Scalar, TorsionConfig
from src.services.cartan import cartan_integer_of
from src.services.diagram_service import (
    build_simple_chain,
    canonical_form,
    cartan_type_name,
    chi_of,
    detect_cartan_type,
    diagrams_isomorphic,
    from_key,
    is_connected,
    is_path_graph,
    read_simple_chain_symbol,
    restrict,
    simple_chains_equivalent,
    to_dynkin,
    twist,
)

N = 2520
CONFIG = TorsionConfig(N)
Q = CONFIG.generic()
M1 = CONFIG.minus_one()

scalars = st.builds(
    Scalar,
    st.integers(min_value=-3, max_value=3),
    st.integers(min_value=0, max_value=N - 1),
    st.just(N),
)


@st.composite
def matrices(draw, dim=3):
    free = draw(
        st.lists(st.integers(-3, 3), min_size=dim * dim, max_size=dim * dim)
    )
    tor = draw(
        st.lists(st.integers(0, N - 1), min_size=dim * dim, max_size=dim * dim)
    )
    return BicharacterMatrix(
        np.array(free).reshape(dim, dim), np.array(tor).reshape(dim, dim), N
    )


def a2() -> BicharacterMatrix:
    """q_11 = q_22 = q, q_12 = q^-1 and q_21 = 1."""
    return BicharacterMatrix.from_entries([[Q, Q.inverse()], [CONFIG.one(), Q]])


class TestBicharacter:
    """Tests for evaluation of the bicharacter."""

    def test_unit_vectors_give_entries(self):
        m = a2()
        assert chi_of(m, [1, 0], [0, 1]) == Q.inverse()
        assert chi_of(m, [0, 1], [1, 0]).is_one()

    def test_zero_vector(self):
        assert chi_of(a2(), [0, 0], [3, -2]).is_one()

    def test_sum_of_simple_roots(self):
        assert chi_of(a2(), [1, 1], [1, 1]) == Q

    def test_length_mismatch(self):
        with pytest.raises(InvalidDiagramError):
            chi_of(a2(), [1, 0, 0], [1, 0])

    @settings(max_examples=50)
    @given(
        matrices(),
        st.lists(st.integers(-4, 4), min_size=3, max_size=3),
        st.lists(st.integers(-4, 4), min_size=3, max_size=3),
        st.lists(st.integers(-4, 4), min_size=3, max_size=3),
    )
    def test_bilinear(self, m, x, x2, y):
        total = [a + b for a, b in zip(x, x2, strict=True)]
        assert chi_of(m, total, y) == chi_of(m, x, y) * chi_of(m, x2, y)

    def test_matrix_is_immutable(self):
        m = a2()
        with pytest.raises(ValueError):
            m.free[0, 0] = 5


class TestDiagrams:
    """Tests for diagram reading, twists and restriction."""

    def test_trivial_matrix_has_no_edges(self):
        m = BicharacterMatrix(np.zeros((3, 3)), np.zeros((3, 3)), N)
        diagram = to_dynkin(m)
        assert all(v.is_one() for v in diagram.vertices)
        assert diagram.edge_list() == []

    def test_transpose_gives_same_diagram(self):
        m = a2()
        transposed = BicharacterMatrix(m.free.T, m.tor.T, N)
        assert to_dynkin(m) == to_dynkin(transposed)

    def test_from_diagram_round_trip(self, a4):
        assert to_dynkin(BicharacterMatrix.from_diagram(a4)) == a4

    @settings(max_examples=50)
    @given(matrices(), scalars)
    def test_twist_invariance(self, m, t):
        assert to_dynkin(twist(m, 0, 2, t)) == to_dynkin(m)

    def test_twist_rejects_diagonal(self):
        with pytest.raises(InvalidDiagramError):
            twist(a2(), 1, 1, Q)

    def test_asymmetric_edge_table_rejected(self):
        one = CONFIG.one()
        with pytest.raises(InvalidDiagramError):
            DynkinDiagram((Q, Q), ((Q, Q), (one, Q)))

    def test_restrict_full_set(self, a4):
        m = BicharacterMatrix.from_diagram(a4)
        assert restrict(m, [0, 1, 2, 3]) == m

    def test_restrict_to_a3(self, a4):
        m = BicharacterMatrix.from_diagram(a4)
        sub = restrict(m, [0, 1, 2])
        assert cartan_type_name(detect_cartan_type(sub)) == "A_3"

    def test_restrict_singleton(self, a4):
        sub = restrict(BicharacterMatrix.from_diagram(a4), [2])
        assert sub.dim == 1
        assert sub.entry(0, 0) == Q

    def test_restrict_out_of_range(self, a4):
        with pytest.raises(InvalidDiagramError):
            restrict(BicharacterMatrix.from_diagram(a4), [0, 4])

    def test_connectivity(self, path):
        one = CONFIG.one()
        assert is_connected(DynkinDiagram.from_labels([Q], {}))
        assert not is_connected(path([Q, Q, Q], [Q.inverse(), one]))
        assert is_connected(path([Q, Q, Q], [Q.inverse(), Q.inverse()]))

    def test_path_graph(self, a4, d4):
        assert is_path_graph(a4)
        assert not is_path_graph(d4)

    def test_str(self, path):
        assert str(path([M1, Q], [Q.inverse()])) == "[-1 q] 1-2:q^-1"


class TestCartanType:
    """Tests for Cartan type detection."""

    def test_cartan_integers(self):
        assert cartan_integer_of(Q, Q.inverse()) == -1
        assert cartan_integer_of(Q, Q**-2) == -2
        assert cartan_integer_of(M1, Q) == -1
        assert cartan_integer_of(Q, Q) is None
        assert cartan_integer_of(Q, CONFIG.one()) == 0

    def test_root_of_unity_vertex(self):
        z3 = CONFIG.root(3)
        # 1 + p + p^2 = 0 for p of order three
        assert cartan_integer_of(z3, Q) == -2

    def test_a4(self, a4):
        cartan = detect_cartan_type(a4)
        expected = 2 * np.eye(4, dtype=int) - np.eye(4, k=1, dtype=int) - np.eye(4, k=-1, dtype=int)
        assert np.array_equal(cartan, expected)
        assert cartan_type_name(cartan) == "A_4"

    def test_d4(self, d4):
        assert cartan_type_name(detect_cartan_type(d4)) == "D_4"

    def test_rank_one(self):
        cartan = detect_cartan_type(DynkinDiagram.from_labels([Q], {}))
        assert cartan.tolist() == [[2]]
        assert cartan_type_name(cartan) == "A_1"

    def test_b2_and_g2(self, path):
        assert cartan_type_name(detect_cartan_type(path([Q, Q**2], [Q**-2]))) == "B_2"
        assert cartan_type_name(detect_cartan_type(path([Q, Q**3], [Q**-3]))) == "G_2"

    def test_disconnected(self):
        diagram = DynkinDiagram.from_labels([Q, Q], {})
        assert cartan_type_name(detect_cartan_type(diagram)) == "A_1 x A_1"

    def test_affine_matrix_has_no_name(self, path):
        cartan = detect_cartan_type(path([Q, Q], [Q**-3]))
        assert cartan is not None
        assert cartan_type_name(cartan) is None

    def test_not_cartan(self, path):
        # vertex -1 next to the edge -q admits no exponent
        diagram = path([Q, Q, M1, -(Q.inverse())], [Q.inverse(), Q.inverse(), -Q])
        assert detect_cartan_type(diagram) is None

    def test_vertex_one_rejected(self):
        with pytest.raises(InvalidDiagramError):
            detect_cartan_type(DynkinDiagram.from_labels([CONFIG.one(), Q], {}))

    def test_detected_matrix_satisfies_relations(self, d4):
        cartan = detect_cartan_type(d4)
        for i in range(4):
            for j in range(4):
                if i != j:
                    assert d4.edge(i, j) == d4.vertex(i) ** int(cartan[i, j])


class TestCanonicalForm:
    """Tests for comparison up to vertex permutation."""

    def test_permutation_invariant(self, d4):
        assert canonical_form(d4.relabel([3, 1, 0, 2])) == canonical_form(d4)

    def test_distinguishes_shapes(self, a4, d4):
        assert canonical_form(a4) != canonical_form(d4)

    def test_distinguishes_labels(self, path):
        first = path([M1, Q, Q], [Q.inverse(), Q.inverse()])
        second = path([Q, M1, Q], [Q.inverse(), Q.inverse()])
        assert not diagrams_isomorphic(first, second)

    def test_from_key_round_trip(self, d4):
        key = canonical_form(d4)
        assert canonical_form(from_key(key)) == key
        assert diagrams_isomorphic(from_key(key), d4)


class TestSimpleChains:
    """Tests for the simple chain symbol C(d, q; I)."""

    def test_length_four(self):
        diagram = build_simple_chain(SimpleChainSpec(4, Q, (1, 3, 4)))
        assert diagram.vertices == (M1, M1, Q.inverse(), M1)
        assert [x for _, _, x in diagram.edge_list()] == [Q.inverse(), Q, Q]

    def test_length_five(self):
        diagram = build_simple_chain(SimpleChainSpec(5, Q, (1, 3, 4)))
        assert diagram.vertices == (M1, M1, Q.inverse(), M1, Q)
        assert [x for _, _, x in diagram.edge_list()] == [Q.inverse(), Q, Q, Q.inverse()]

    def test_empty_index_set_is_cartan(self):
        diagram = build_simple_chain(SimpleChainSpec(5, Q))
        assert cartan_type_name(detect_cartan_type(diagram)) == "A_5"

    @pytest.mark.parametrize(
        "indices", [(), (1,), (2,), (1, 2), (2, 4), (1, 3, 5), (1, 2, 3, 4, 5)]
    )
    def test_defining_relation(self, indices):
        diagram = build_simple_chain(SimpleChainSpec(5, Q, indices))
        for i in range(1, 4):
            product = diagram.vertex(i) ** 2 * diagram.edge(i - 1, i) * diagram.edge(i, i + 1)
            assert product.is_one()

    @pytest.mark.parametrize("indices", [(), (1,), (3,), (1, 4), (2, 3, 4)])
    def test_symbol_read_back(self, indices):
        spec = SimpleChainSpec(4, Q, indices)
        recovered = read_simple_chain_symbol(build_simple_chain(spec))
        assert recovered is not None
        assert build_simple_chain(recovered) == build_simple_chain(spec) or (
            build_simple_chain(recovered) == build_simple_chain(spec).relabel([3, 2, 1, 0])
        )

    def test_not_a_chain(self, d4, path):
        assert read_simple_chain_symbol(d4) is None
        assert read_simple_chain_symbol(path([Q, Q**2], [Q**-2])) is None

    def test_symbol(self):
        assert SimpleChainSpec(4, Q, (1, 3, 4)).symbol() == "C(4,q;1,3,4)"
        assert str(SimpleChainSpec(3, M1)) == "C(3,-1;)"

    @pytest.mark.parametrize(
        ("d", "q", "indices"),
        [(1, Q, ()), (3, CONFIG.one(), ()), (3, Q, (2, 1)), (3, Q, (0,)), (3, Q, (4,))],
    )
    def test_invalid_specs(self, d, q, indices):
        with pytest.raises(InvalidDiagramError):
            SimpleChainSpec(d, q, indices)

    def test_equivalence_rule(self):
        assert simple_chains_equivalent(
            SimpleChainSpec(4, Q, (1,)), SimpleChainSpec(4, Q, (3,))
        )
        assert simple_chains_equivalent(
            SimpleChainSpec(4, Q, (1,)), SimpleChainSpec(4, Q.inverse(), (1, 2, 3, 4))
        )
        assert not simple_chains_equivalent(
            SimpleChainSpec(4, Q, (1,)), SimpleChainSpec(4, Q, (1, 2))
        )
        assert not simple_chains_equivalent(
            SimpleChainSpec(4, Q, ()), SimpleChainSpec(5, Q, ())
        )
