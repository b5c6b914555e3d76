"""Unit tests for the compressed root and basis notation."""

import pytest

from src.core.exceptions import DiagramFormatError
from src.models.groupoid import Basis
from src.utils.notation import format_basis, format_root, parse_basis, parse_root


class TestFormatRoot:
    @pytest.mark.parametrize(
        ("vector", "expected"),
        [
            ((1, 0, 0, 0), "1"),
            ((1, 1, 0, 0), "12"),
            ((1, 2, 1, 0), "12^23"),
            ((-1, -2, -3, -1), "-12^23^34"),
            ((-1, -1, -1, -1), "-1234"),
            ((0, 0, 0), "0"),
            ((1, -1), "[1,-1]"),
        ],
    )
    def test_format(self, vector, expected):
        assert format_root(vector) == expected

    def test_large_index_and_exponent_are_braced(self):
        vector = [0] * 9 + [12]
        assert format_root(vector) == "{10}^{12}"


class TestParseRoot:
    def test_parse(self):
        assert parse_root("-12^23^24", 4) == (-1, -2, -2, -1)
        assert parse_root("1234^2", 4) == (1, 1, 1, 2)

    def test_braced(self):
        assert parse_root("{10}^{12}", 10) == (0,) * 9 + (12,)

    def test_index_out_of_range(self):
        with pytest.raises(DiagramFormatError):
            parse_root("15", 4)

    def test_malformed(self):
        with pytest.raises(DiagramFormatError):
            parse_root("1x", 4)


class TestBasis:
    def test_format_basis(self):
        basis = Basis.from_vectors([(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (-1, -1, -1, -1)])
        assert format_basis(basis) == "(2,3,4,-1234)"
        assert str(basis) == "(2,3,4,-1234)"

    def test_parse_basis(self):
        assert parse_basis("(-1,12,3,4)", 4) == (
            (-1, 0, 0, 0),
            (1, 1, 0, 0),
            (0, 0, 1, 0),
            (0, 0, 0, 1),
        )

    def test_parse_basis_wrong_length(self):
        with pytest.raises(DiagramFormatError):
            parse_basis("(1,2,3)", 4)

    def test_parse_basis_needs_parentheses(self):
        with pytest.raises(DiagramFormatError):
            parse_basis("1,2", 2)
