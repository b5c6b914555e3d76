"""Line-oriented diagram files.

A file describes a generalized Dynkin diagram by its labels::

    # comment
    dim 4
    torsion 2520          (optional)
    gen q generic         (or: gen q order K)
    v 1 q
    e 1 2 q^-1            (edge label q_12 q_21; unspecified edges are 1)

Catalog templates additionally use ``range d A..``, ``range j A..B``,
``chain n Q I`` (a simple chain ``C(n,Q;I)`` on vertices ``1..n``, ``I`` being
``-`` or a comma list of expressions and ranges) and expressions in ``d`` and
``j`` wherever an index is expected. Expressions are integer linear
combinations of ``d``, ``j`` and constants, optionally parenthesised and
followed by ``/k`` for floor division, e.g. ``d-1`` or ``(d+1)/2``.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import TYPE_CHECKING, Any

from ..core.exceptions import (
    ConfigurationError,
    DiagramFormatError,
    InvalidDiagramError,
    ScalarParseError,
)
from ..models.catalog import ChainPlacement, DiagramTemplate
from ..models.diagram import DynkinDiagram, SimpleChainSpec
from ..models.scalar import Scalar, TorsionConfig, evaluate_at, format_scalar, parse_scalar

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping

_EXPR_RE = re.compile(r"^\(?([^()/]+)\)?(?:/(\d+))?$")
_TERM_RE = re.compile(r"\s*([+-]?)\s*(\d+|[a-z])")


def evaluate_expression(
    text: str,
    env: Mapping[str, int],
    *,
    source: str | None = None,
    line: int | None = None,
) -> int:
    """Evaluate an index expression such as ``d-1`` or ``(d+1)/2``.

    Args:
        text: Expression text
        env: Values of the variables ``d`` and ``j``

    Returns:
        The integer value

    Raises:
        DiagramFormatError: On syntax errors or unbound variables

    Example:
        >>> evaluate_expression("(d+1)/2", {"d": 6})
        3
    """
    match = _EXPR_RE.match(text.strip())
    if match is None:
        raise DiagramFormatError(f"Malformed expression {text!r}", source=source, line=line)
    body, divisor = match.groups()
    total = 0
    position = 0
    compact = body.replace(" ", "")
    while position < len(compact):
        term = _TERM_RE.match(compact, position)
        if term is None or (position > 0 and not term.group(1)):
            raise DiagramFormatError(
                f"Malformed expression {text!r}", source=source, line=line
            )
        sign, atom = term.groups()
        if atom.isdigit():
            value = int(atom)
        elif atom in env:
            value = env[atom]
        else:
            raise DiagramFormatError(
                f"Unbound variable {atom!r} in {text!r}", source=source, line=line
            )
        total += -value if sign == "-" else value
        position = term.end()
    if not compact:
        raise DiagramFormatError("Empty expression", source=source, line=line)
    return total // int(divisor) if divisor else total


def expand_items(
    items: Iterable[str],
    env: Mapping[str, int],
    *,
    descending: bool = False,
    source: str | None = None,
) -> list[int]:
    """Expand expressions and ``A..B`` ranges into a list of integers.

    Ranges with ``B < A`` are empty, or run downwards when ``descending`` is set.
    """
    values: list[int] = []
    for item in items:
        if item == "-":
            continue
        if ".." in item:
            low_text, _, high_text = item.partition("..")
            low = evaluate_expression(low_text, env, source=source)
            high = evaluate_expression(high_text, env, source=source)
            if low <= high:
                values.extend(range(low, high + 1))
            elif descending:
                values.extend(range(low, high - 1, -1))
        else:
            values.append(evaluate_expression(item, env, source=source))
    return values


def _parse_label(text: str, config: TorsionConfig, source: str, line: int) -> Scalar:
    try:
        return parse_scalar(text, config)
    except ScalarParseError as exc:
        raise DiagramFormatError(exc.message, source=source, line=line) from exc


def parse_diagram_text(
    text: str, *, source: str = "<text>", config: TorsionConfig | None = None
) -> DiagramTemplate:
    """Parse a diagram file into a template.

    A ``torsion`` line in the file takes precedence over ``config``.
    """
    lines = [
        (number, raw.split("#", 1)[0].split())
        for number, raw in enumerate(text.splitlines(), start=1)
    ]
    lines = [(number, fields) for number, fields in lines if fields]

    torsion = (config or TorsionConfig.from_settings()).order
    for number, fields in lines:
        if fields[0] == "torsion":
            if len(fields) != 2 or not fields[1].isdigit():
                raise DiagramFormatError("Expected 'torsion N'", source=source, line=number)
            torsion = int(fields[1])
    try:
        label_config = TorsionConfig(torsion)
    except ConfigurationError as exc:
        raise DiagramFormatError(exc.message, source=source) from exc

    values: dict[str, Any] = {"dim": None, "generator_order": None}
    chains: list[ChainPlacement] = []
    vertices: list[tuple[str, Scalar]] = []
    edges: list[tuple[str, str, Scalar]] = []

    for number, fields in lines:
        keyword, args = fields[0], fields[1:]
        if keyword == "torsion":
            continue
        if keyword == "dim" and len(args) == 1:
            values["dim"] = args[0]
        elif keyword == "gen" and args[:1] == ["q"]:
            if args[1:] == ["generic"]:
                values["generator_order"] = None
            elif len(args) == 3 and args[1] == "order" and args[2].isdigit():
                values["generator_order"] = int(args[2])
            else:
                raise DiagramFormatError(
                    "Expected 'gen q generic' or 'gen q order K'", source=source, line=number
                )
        elif keyword == "range" and len(args) == 2 and ".." in args[1]:
            low, _, high = args[1].partition("..")
            if args[0] == "d":
                values["d_range"] = (low, high or None)
            elif args[0] == "j" and high:
                values["j_range"] = (low, high)
            else:
                raise DiagramFormatError(
                    f"Unsupported range {' '.join(args)!r}", source=source, line=number
                )
        elif keyword == "chain" and len(args) == 3:
            items = tuple(args[2].split(","))
            label = _parse_label(args[1], label_config, source, number)
            chains.append(ChainPlacement(args[0], label, items))
        elif keyword == "v" and len(args) == 2:
            vertices.append((args[0], _parse_label(args[1], label_config, source, number)))
        elif keyword == "e" and len(args) == 3:
            edges.append(
                (args[0], args[1], _parse_label(args[2], label_config, source, number))
            )
        else:
            raise DiagramFormatError(
                f"Unrecognised line {' '.join(fields)!r}", source=source, line=number
            )

    if values["dim"] is None:
        raise DiagramFormatError("Missing 'dim' line", source=source)
    order = values["generator_order"]
    return DiagramTemplate(
        source=source,
        dim=values["dim"],
        torsion=torsion,
        generator_order=order,
        d_range=values.get("d_range"),
        j_range=values.get("j_range"),
        chains=tuple(chains),
        vertices=tuple(vertices),
        edges=tuple(edges),
    )


def load_template(path: str | Path, config: TorsionConfig | None = None) -> DiagramTemplate:
    file_path = Path(path)
    try:
        text = file_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DiagramFormatError(f"Cannot read diagram file: {exc.strerror}", source=str(path)) from exc
    return parse_diagram_text(text, source=str(path), config=config)


def default_parameter(template: DiagramTemplate) -> Scalar:
    """The generic ``q``, or the fixed primitive K-th root for ``gen q order K``."""
    config = TorsionConfig(template.torsion)
    if template.generator_order is None:
        return config.generic()
    if not config.admits(template.generator_order):
        raise DiagramFormatError(
            f"Generator order {template.generator_order} does not divide "
            f"torsion order {template.torsion}",
            source=template.source,
        )
    return config.root(template.generator_order)


def j_bounds(template: DiagramTemplate, d: int) -> tuple[int, int] | None:
    if template.j_range is None:
        return None
    low, high = template.j_range
    env = {"d": d}
    return (
        evaluate_expression(low, env, source=template.source),
        evaluate_expression(high, env, source=template.source),
    )


def realize(
    template: DiagramTemplate,
    *,
    param: Scalar | None = None,
    d: int | None = None,
    j: int | None = None,
) -> DynkinDiagram:
    """Instantiate a template at a parameter value (and rank ``d``, index count ``j``).

    Raises:
        DiagramFormatError: If a needed variable is missing or the labels do not
            cover every vertex
    """
    source = template.source
    param = param if param is not None else default_parameter(template)
    env: dict[str, int] = {}
    if template.is_family:
        if d is None:
            raise DiagramFormatError("Template is a family in d; a rank is required", source=source)
        low_text, high_text = template.d_range  # type: ignore[misc]
        low = evaluate_expression(low_text, {}, source=source)
        high = evaluate_expression(high_text, {}, source=source) if high_text else None
        if d < low or (high is not None and d > high):
            raise DiagramFormatError(f"Rank {d} outside the family range", source=source)
        env["d"] = d
    if template.uses_j:
        bounds = j_bounds(template, env.get("d", 0))
        if j is None or bounds is None or not bounds[0] <= j <= bounds[1]:
            raise DiagramFormatError(
                f"Template needs j in {bounds[0]}..{bounds[1]}" if bounds else "Template needs j",
                source=source,
            )
        env["j"] = j

    dim = evaluate_expression(template.dim, env, source=source)
    if d is not None and not template.is_family and dim != d:
        raise DiagramFormatError(f"Diagram has rank {dim}, not {d}", source=source)
    if dim < 1:
        raise DiagramFormatError("Diagram rank must be positive", source=source)

    def index(text: str) -> int:
        value = evaluate_expression(text, env, source=source)
        if not 1 <= value <= dim:
            raise DiagramFormatError(f"Vertex {value} outside 1..{dim}", source=source)
        return value - 1

    from ..services.diagram_service import build_simple_chain

    labels: list[Scalar | None] = [None] * dim
    edge_labels: dict[tuple[int, int], Scalar] = {}
    try:
        for chain in template.chains:
            length = evaluate_expression(chain.length, env, source=source)
            if length > dim:
                raise DiagramFormatError("Chain longer than the diagram", source=source)
            indices = tuple(expand_items(chain.indices, env, source=source))
            spec = SimpleChainSpec(length, evaluate_at(chain.label, param), indices)
            piece = build_simple_chain(spec)
            labels[:length] = piece.vertices
            for a, b, label in piece.edge_list():
                edge_labels[(a, b)] = label
        for position, label in template.vertices:
            labels[index(position)] = evaluate_at(label, param)
        for first, second, label in template.edges:
            a, b = sorted((index(first), index(second)))
            if a == b:
                raise DiagramFormatError("Loop edges are not allowed", source=source)
            edge_labels[(a, b)] = evaluate_at(label, param)
    except InvalidDiagramError as exc:
        raise DiagramFormatError(exc.message, source=source) from exc

    missing = [k + 1 for k, label in enumerate(labels) if label is None]
    if missing:
        raise DiagramFormatError(f"Vertices {missing} have no label", source=source)
    return DynkinDiagram.from_labels(labels, edge_labels)  # type: ignore[arg-type]


def parse_diagram(
    text: str, *, source: str = "<text>", config: TorsionConfig | None = None
) -> DynkinDiagram:
    """Parse a concrete diagram file at its default parameter."""
    return realize(parse_diagram_text(text, source=source, config=config))


def load_diagram(path: str | Path, config: TorsionConfig | None = None) -> DynkinDiagram:
    return realize(load_template(path, config))


def write_diagram(diagram: DynkinDiagram) -> str:
    """Serialize a diagram; ``parse_diagram`` reads the output back unchanged."""
    lines = [f"dim {diagram.dim}", f"torsion {diagram.torsion}", "gen q generic"]
    lines += [f"v {k + 1} {format_scalar(v)}" for k, v in enumerate(diagram.vertices)]
    lines += [
        f"e {i + 1} {j + 1} {format_scalar(label)}" for i, j, label in diagram.edge_list()
    ]
    return "\n".join(lines) + "\n"


def diagram_to_json(diagram: DynkinDiagram) -> dict[str, Any]:
    """Canonical JSON export with 1-based vertex numbers."""
    return {
        "dim": diagram.dim,
        "vertices": [format_scalar(v) for v in diagram.vertices],
        "edges": [
            [i + 1, j + 1, format_scalar(label)] for i, j, label in diagram.edge_list()
        ],
    }
