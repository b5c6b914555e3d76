"""Command-line entry point.

This module wires logging, the run ID, the command handlers and the error
handler together. Reports go to stdout, log records to stderr.
"""

from __future__ import annotations

import sys
from typing import TYPE_CHECKING

from .cli.commands import CommandContext, dispatch
from .cli.errors import handle_error
from .cli.output import emit_report
from .cli.parser import build_parser
from .core.logging import get_logger, new_run_id, setup_logging

if TYPE_CHECKING:
    from collections.abc import Sequence


def main(argv: Sequence[str] | None = None) -> int:
    """Run one command.

    Args:
        argv: Arguments without the program name (default: ``sys.argv[1:]``)

    Returns:
        Exit status: 0 on success, 1 on a verification discrepancy, 2 on an
        input or configuration error
    """
    args = build_parser().parse_args(argv)
    as_json = getattr(args, "json", False)
    setup_logging(getattr(args, "log_level", None))
    new_run_id()
    logger = get_logger(__name__)

    try:
        ctx = CommandContext.from_args(args)
        report, status = dispatch(args, ctx)
    except Exception as exc:  # noqa: BLE001
        status, error = handle_error(exc)
        stream = sys.stdout if as_json else sys.stderr
        text = emit_report(error, as_json=True) if as_json else f"error: {error.message}"
        print(text, file=stream)
        return int(status)

    print(emit_report(report, as_json=as_json))
    logger.info("Command finished", extra={"command": args.command, "status": int(status)})
    return int(status)

