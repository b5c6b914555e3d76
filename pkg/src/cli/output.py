"""Rendering of reports as indented text or stable JSON."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from pydantic import BaseModel

_DIAGRAM_KEYS = {"dim", "vertices", "edges"}


def _diagram_line(value: dict[str, Any]) -> str:
    labels = " ".join(value["vertices"])
    edges = " ".join(f"{i}-{j}:{label}" for i, j, label in value["edges"])
    return f"[{labels}] {edges}".rstrip()


def _scalar(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def _render(value: Any, indent: int) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    for key, item in value.items():
        if isinstance(item, dict):
            if set(item) == _DIAGRAM_KEYS:
                lines.append(f"{pad}{key}: {_diagram_line(item)}")
            else:
                lines.append(f"{pad}{key}:")
                lines.extend(_render(item, indent + 1))
        elif isinstance(item, list) and item and isinstance(item[0], dict):
            lines.append(f"{pad}{key}: {len(item)}")
            for entry in item:
                if set(entry) == _DIAGRAM_KEYS:
                    lines.append(f"{pad}  - {_diagram_line(entry)}")
                    continue
                nested = _render(entry, indent + 2)
                lines.append(f"{pad}  - {nested[0].strip()}")
                lines.extend(nested[1:])
        elif isinstance(item, list):
            lines.append(f"{pad}{key}: {', '.join(_scalar(x) for x in item) or '-'}")
        else:
            lines.append(f"{pad}{key}: {_scalar(item)}")
    return lines


def emit_report(report: BaseModel, *, as_json: bool = False) -> str:
    """Render a report.

    Args:
        report: Any report model
        as_json: Emit JSON with sorted keys instead of indented text

    Returns:
        The text to print; identical inputs give byte-identical output
    """
    payload = report.model_dump(mode="json")
    if as_json:
        return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)
    return "\n".join(_render(payload, 0))
