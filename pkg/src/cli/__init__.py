"""Command-line interface."""

from .commands import CommandContext, dispatch
from .errors import ExitCode, handle_error
from .output import emit_report
from .parser import build_parser

__all__ = [
    "CommandContext",
    "ExitCode",
    "build_parser",
    "dispatch",
    "emit_report",
    "handle_error",
]
