"""Unit tests for diagram files and catalog templates."""

import pytest

from src.core.exceptions import DiagramFormatError
from src.models.scalar import TorsionConfig
from src.services.diagram_service import cartan_type_name, detect_cartan_type
from src.utils.diagram_format import (
    default_parameter,
    diagram_to_json,
    evaluate_expression,
    expand_items,
    j_bounds,
    load_diagram,
    parse_diagram,
    parse_diagram_text,
    realize,
    write_diagram,
)

ROW14 = """\
# path with a vertex -1
dim 4
gen q generic
v 1 q
v 2 q
v 3 -1
v 4 -q^-1
e 1 2 q^-1
e 2 3 q^-1
e 3 4 -q
"""

FAMILY = """\
dim d
gen q generic
range d 4..
range j 1..(d+1)/2
chain d q 1..j
"""


class TestExpressions:
    @pytest.mark.parametrize(
        ("text", "env", "expected"),
        [
            ("(d+1)/2", {"d": 6}, 3),
            ("(d+1)/2", {"d": 5}, 3),
            ("d-1", {"d": 5}, 4),
            ("d - j + 2", {"d": 7, "j": 3}, 6),
            ("12", {}, 12),
            ("-2+d", {"d": 4}, 2),
        ],
    )
    def test_evaluate(self, text, env, expected):
        assert evaluate_expression(text, env) == expected

    def test_unbound_variable(self):
        with pytest.raises(DiagramFormatError):
            evaluate_expression("d+1", {})

    @pytest.mark.parametrize("text", ["", "d++", "2d", "d+x", "d/x"])
    def test_malformed(self, text):
        with pytest.raises(DiagramFormatError):
            evaluate_expression(text, {"d": 4})

    def test_expand_ranges(self):
        assert expand_items(["1..3", "d"], {"d": 6}) == [1, 2, 3, 6]
        assert expand_items(["-"], {}) == []
        assert expand_items(["3..1"], {}) == []
        assert expand_items(["3..1"], {}, descending=True) == [3, 2, 1]


class TestParsing:
    """Tests for the line-oriented file format."""

    def test_parse_concrete_diagram(self, config):
        diagram = parse_diagram(ROW14, config=config)
        assert diagram.dim == 4
        assert str(diagram) == "[q q -1 -q^-1] 1-2:q^-1 2-3:q^-1 3-4:-q"

    def test_missing_edges_default_to_one(self, config):
        diagram = parse_diagram("dim 3\nv 1 q\nv 2 q\nv 3 q\ne 1 2 q^-1\n", config=config)
        assert diagram.edge(0, 2).is_one()
        assert diagram.edge(1, 2).is_one()

    def test_torsion_line_wins(self):
        diagram = parse_diagram("dim 1\ntorsion 12\nv 1 z4\n", config=TorsionConfig(2520))
        assert diagram.torsion == 12

    def test_generator_of_fixed_order(self, config):
        template = parse_diagram_text("dim 1\ngen q order 3\nv 1 q\n", config=config)
        assert default_parameter(template) == config.root(3)
        assert realize(template).vertex(0) == config.root(3)

    def test_generator_order_must_divide_torsion(self):
        template = parse_diagram_text("dim 1\ntorsion 12\ngen q order 5\nv 1 q\n")
        with pytest.raises(DiagramFormatError):
            default_parameter(template)

    def test_error_carries_line_number(self, config):
        with pytest.raises(DiagramFormatError) as exc_info:
            parse_diagram_text("dim 2\nv 1 q\nv 2 w\n", source="bad.dgm", config=config)
        assert exc_info.value.line == 3
        assert exc_info.value.message.startswith("bad.dgm:3: ")

    def test_unknown_keyword(self, config):
        with pytest.raises(DiagramFormatError) as exc_info:
            parse_diagram_text("dim 2\nvertex 1 q\n", config=config)
        assert exc_info.value.line == 2

    def test_missing_dim(self, config):
        with pytest.raises(DiagramFormatError):
            parse_diagram_text("v 1 q\n", config=config)

    def test_missing_vertex_label(self, config):
        with pytest.raises(DiagramFormatError):
            parse_diagram("dim 2\nv 1 q\ne 1 2 q^-1\n", config=config)

    def test_vertex_out_of_range(self, config):
        with pytest.raises(DiagramFormatError):
            parse_diagram("dim 1\nv 2 q\n", config=config)

    def test_loop_edge(self, config):
        with pytest.raises(DiagramFormatError):
            parse_diagram("dim 2\nv 1 q\nv 2 q\ne 1 1 q\n", config=config)

    def test_load_missing_file(self, tmp_path, config):
        with pytest.raises(DiagramFormatError):
            load_diagram(tmp_path / "absent.dgm", config)

    def test_load_from_disk(self, tmp_path, config):
        target = tmp_path / "row14.dgm"
        target.write_text(ROW14, encoding="utf-8")
        assert load_diagram(target, config) == parse_diagram(ROW14, config=config)


class TestTemplates:
    """Tests for families in the rank d and the index count j."""

    def test_family_needs_rank(self, config):
        template = parse_diagram_text(FAMILY, config=config)
        assert template.is_family
        assert template.uses_j
        with pytest.raises(DiagramFormatError):
            realize(template)

    def test_j_bounds(self, config):
        template = parse_diagram_text(FAMILY, config=config)
        assert j_bounds(template, 6) == (1, 3)
        assert j_bounds(template, 5) == (1, 3)

    def test_realize_family(self, config):
        template = parse_diagram_text(FAMILY, config=config)
        diagram = realize(template, d=5, j=2)
        q = config.generic()
        m1 = config.minus_one()
        assert diagram.vertices == (q.inverse(), m1, q, q, q)

    def test_j_out_of_range(self, config):
        template = parse_diagram_text(FAMILY, config=config)
        with pytest.raises(DiagramFormatError):
            realize(template, d=5, j=4)

    def test_rank_below_family_range(self, config):
        template = parse_diagram_text(FAMILY, config=config)
        with pytest.raises(DiagramFormatError):
            realize(template, d=3, j=1)

    def test_parameter_substitution(self, config):
        template = parse_diagram_text("dim 2\nv 1 q\nv 2 q\ne 1 2 q^-1\n", config=config)
        z5 = config.root(5)
        diagram = realize(template, param=z5)
        assert diagram.vertex(0) == z5
        assert diagram.edge(0, 1) == z5.inverse()

    def test_chain_with_overrides(self, config):
        text = "dim d\nrange d 4..\nchain d-1 q -\nv d q\ne d-1 d q^-1\n"
        diagram = realize(parse_diagram_text(text, config=config), d=5)
        assert cartan_type_name(detect_cartan_type(diagram)) == "A_5"


class TestExport:
    def test_write_then_parse(self, config):
        diagram = parse_diagram(ROW14, config=config)
        assert parse_diagram(write_diagram(diagram), config=config) == diagram

    def test_json(self, config):
        diagram = parse_diagram(ROW14, config=config)
        assert diagram_to_json(diagram) == {
            "dim": 4,
            "vertices": ["q", "q", "-1", "-q^-1"],
            "edges": [[1, 2, "q^-1"], [2, 3, "q^-1"], [3, 4, "-q"]],
        }
