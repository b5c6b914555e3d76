"""Error handling for command execution.

Input problems map to exit status 2, verification discrepancies to 1.
"""

from __future__ import annotations

import traceback
from enum import IntEnum

from ..core.exceptions import WeylError
from ..core.logging import get_logger, get_run_id
from ..schemas.reports import ErrorReport

logger = get_logger(__name__)


class ExitCode(IntEnum):
    OK = 0
    DISCREPANCY = 1
    INPUT_ERROR = 2


def error_report(exc: BaseException) -> ErrorReport:
    """Build the standardized error payload for an exception."""
    if isinstance(exc, WeylError):
        payload = exc.to_dict()
        return ErrorReport(
            error=payload["error"],
            message=payload["message"],
            run_id=get_run_id(),
            detail=payload.get("detail"),
        )
    if isinstance(exc, OSError):
        return ErrorReport(error="IO_ERROR", message=str(exc), run_id=get_run_id())
    return ErrorReport(
        error="INTERNAL_ERROR",
        message=f"An unexpected error occurred: {exc}",
        run_id=get_run_id(),
    )


def handle_error(exc: BaseException) -> tuple[ExitCode, ErrorReport]:
    """Log an exception and return the exit status and the report to print."""
    if isinstance(exc, WeylError):
        logger.warning(
            f"Command failed: {exc.message}",
            extra={"error_code": exc.error_code},
        )
    elif isinstance(exc, OSError):
        logger.warning(f"I/O error: {exc}", extra={"exception_type": type(exc).__name__})
    else:
        logger.error(
            f"Unexpected error: {exc}",
            extra={
                "exception_type": type(exc).__name__,
                "traceback": traceback.format_exc(),
            },
        )
    return ExitCode.INPUT_ERROR, error_report(exc)
