"""Compressed notation for roots and bases.

A vector ``m_1 e_1 + ... + m_d e_d`` with all ``m_i`` of one sign is written as
``1^{m_1}2^{m_2}...``: zero terms are dropped, exponents 1 are omitted and a
leading ``-`` marks a negative vector, e.g. ``-12^23^24`` for
``-(e_1 + 2e_2 + 3e_3 + e_4)``. A basis prints as a parenthesised tuple.
"""

from __future__ import annotations

import re
from typing import TYPE_CHECKING

from ..core.exceptions import DiagramFormatError

if TYPE_CHECKING:
    from collections.abc import Sequence

    from ..models.groupoid import Basis

_TERM_RE = re.compile(r"(\d|\{\d+\})(?:\^(\d|\{\d+\}))?")


def _atom(value: int) -> str:
    return str(value) if value < 10 else f"{{{value}}}"


def format_root(vector: Sequence[int]) -> str:
    """Format an integer vector in compressed notation.

    Args:
        vector: Coordinates in the standard basis, all of one sign

    Returns:
        Compressed form such as ``12^23`` or ``-1234``; mixed-sign vectors
        fall back to a bracketed coordinate list

    Example:
        >>> format_root((1, 2, 1, 0))
        '12^23'
    """
    values = [int(x) for x in vector]
    if not any(values):
        return "0"
    if any(x > 0 for x in values) and any(x < 0 for x in values):
        return "[" + ",".join(map(str, values)) + "]"
    sign = "-" if any(x < 0 for x in values) else ""
    parts = []
    for index, value in enumerate(values, start=1):
        m = abs(value)
        if m == 0:
            continue
        parts.append(_atom(index) if m == 1 else f"{_atom(index)}^{_atom(m)}")
    return sign + "".join(parts)


def parse_root(token: str, d: int) -> tuple[int, ...]:
    """Parse a compressed root such as ``-12^23^24`` into a length-``d`` vector."""
    text = token.strip()
    sign = 1
    if text.startswith("-"):
        sign = -1
        text = text[1:]
    values = [0] * d
    position = 0
    while position < len(text):
        match = _TERM_RE.match(text, position)
        if match is None:
            raise DiagramFormatError(f"Malformed root {token!r}")
        index = int(match.group(1).strip("{}"))
        exponent = int(match.group(2).strip("{}")) if match.group(2) else 1
        if not 1 <= index <= d:
            raise DiagramFormatError(f"Root {token!r} uses index {index} outside 1..{d}")
        values[index - 1] += sign * exponent
        position = match.end()
    if not any(values):
        raise DiagramFormatError(f"Empty root {token!r}")
    return tuple(values)


def format_basis(basis: Basis | Sequence[Sequence[int]]) -> str:
    vectors = basis.vectors if hasattr(basis, "vectors") else basis
    return "(" + ",".join(format_root(v) for v in vectors) + ")"


def parse_basis(text: str, d: int) -> tuple[tuple[int, ...], ...]:
    """Parse a printed tuple such as ``(2,3,-123,1234)``."""
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise DiagramFormatError(f"Basis tuple must be parenthesised: {text!r}")
    tokens = body[1:-1].split(",")
    if len(tokens) != d:
        raise DiagramFormatError(f"Basis tuple {text!r} does not have {d} entries")
    return tuple(parse_root(t, d) for t in tokens)
