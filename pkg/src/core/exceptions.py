"""Exception hierarchy shared by every layer of the toolkit.

Input problems (bad literals, malformed files, impossible requests) derive from
``WeylError`` and carry an ``error_code`` that the CLI error handler reports.
"""

from __future__ import annotations

from typing import Any


class WeylError(Exception):
    """Base class for all toolkit errors."""

    error_code = "WEYL_ERROR"

    def __init__(self, message: str, **context: Any) -> None:
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self) -> dict[str, Any]:
        """Return a JSON-friendly description of the error."""
        payload: dict[str, Any] = {"error": self.error_code, "message": self.message}
        if self.context:
            payload["detail"] = {k: _jsonable(v) for k, v in self.context.items()}
        return payload


class ConfigurationError(WeylError):
    """Torsion order, caps or flags are inconsistent."""

    error_code = "CONFIGURATION_ERROR"


class ScalarParseError(WeylError):
    """A scalar literal could not be parsed."""

    error_code = "SCALAR_PARSE_ERROR"

    def __init__(self, message: str, *, token: str) -> None:
        super().__init__(message, token=token)
        self.token = token


class DiagramFormatError(WeylError):
    """A diagram, manifest or appendix file is malformed."""

    error_code = "DIAGRAM_FORMAT_ERROR"

    def __init__(
        self, message: str, *, source: str | None = None, line: int | None = None
    ) -> None:
        location = f"{source or '<text>'}:{line}" if line is not None else source
        full = f"{location}: {message}" if location else message
        super().__init__(full, source=source, line=line)
        self.source = source
        self.line = line


class InvalidDiagramError(WeylError):
    """A diagram or matrix violates the preconditions of an operation."""

    error_code = "INVALID_DIAGRAM"


class ReflectionUndefinedError(WeylError):
    """A reflection has no Cartan integer at the current basis."""

    error_code = "REFLECTION_UNDEFINED"

    def __init__(
        self,
        message: str,
        *,
        basis: Any,
        i: int,
        j: int,
        position: int | None = None,
    ) -> None:
        super().__init__(message, basis=basis, i=i, j=j, position=position)
        self.basis = basis
        self.i = i
        self.j = j
        self.position = position


class StateError(WeylError):
    """An operation needs a full and finite exploration result."""

    error_code = "STATE_ERROR"


class PreconditionError(WeylError):
    """Root subsystem or instantiation preconditions do not hold."""

    error_code = "PRECONDITION_ERROR"


def _jsonable(value: Any) -> Any:
    if value is None or isinstance(value, bool | int | float | str):
        return value
    if isinstance(value, list | tuple):
        return [_jsonable(v) for v in value]
    return str(value)
