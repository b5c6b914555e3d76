"""Logging for the command-line tool.

Records go to stderr so that reports on stdout stay machine readable. In
production every record is one JSON object; otherwise a colored line is
printed with the ``extra=`` fields appended as ``key=value`` pairs. All lines
of one invocation share a run ID.
"""

import json
import logging
import sys
import time
import uuid
from collections.abc import Iterator
from contextlib import contextmanager
from contextvars import ContextVar
from datetime import UTC, datetime
from typing import Any

from .config import get_settings

# set once per CLI invocation by new_run_id()
run_id: ContextVar[str | None] = ContextVar("run_id", default=None)

_RESERVED_ATTRS = frozenset(
    logging.LogRecord("", 0, "", 0, "", None, None).__dict__
) | {"message", "asctime"}


def _extra_fields(record: logging.LogRecord) -> dict[str, Any]:
    return {
        key: value for key, value in record.__dict__.items() if key not in _RESERVED_ATTRS
    }


class JSONFormatter(logging.Formatter):
    """One JSON object per record: timestamp, level, logger, message, run ID, extras."""

    def format(self, record: logging.LogRecord) -> str:
        entry: dict[str, Any] = {
            "timestamp": datetime.now(UTC).isoformat().replace("+00:00", "Z"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        if current := run_id.get():
            entry["run_id"] = current
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        if extra := _extra_fields(record):
            entry["extra"] = extra
        return json.dumps(entry, default=str, ensure_ascii=False)


class ColoredFormatter(logging.Formatter):
    """Colored formatter for interactive use."""

    COLORS = {
        "DEBUG": "\033[36m",  # Cyan
        "INFO": "\033[32m",  # Green
        "WARNING": "\033[33m",  # Yellow
        "ERROR": "\033[31m",  # Red
        "CRITICAL": "\033[35m",  # Magenta
        "RESET": "\033[0m",  # Reset
    }

    def format(self, record: logging.LogRecord) -> str:
        """Format a record as ``LEVEL [time] [run] logger: message key=value ...``.

        Args:
            record: Log record to format

        Returns:
            Colored log line
        """
        color = self.COLORS.get(record.levelname, "")
        reset = self.COLORS["RESET"]
        parts = [
            f"{color}{record.levelname:<8}{reset}",
            f"[{datetime.now(UTC).strftime('%H:%M:%S')}]",
        ]
        if current := run_id.get():
            parts.append(f"[{current}]")
        parts += [f"{record.name}:", record.getMessage()]
        parts += [f"{key}={value}" for key, value in _extra_fields(record).items()]
        line = " ".join(parts)
        if record.exc_info:
            line += "\n" + self.formatException(record.exc_info)
        return line


def setup_logging(level: str | None = None) -> None:
    """Install a single stderr handler on the root logger.

    Args:
        level: Level name overriding ``LOG_LEVEL`` (the ``--log-level`` flag)
    """
    settings = get_settings()
    level_name = (level or settings.LOG_LEVEL).upper()
    log_level = getattr(logging, level_name, logging.WARNING)

    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(log_level)
    handler.setFormatter(JSONFormatter() if settings.is_production else ColoredFormatter())
    root_logger.addHandler(handler)

    logging.getLogger(__name__).debug(
        "Logging configured",
        extra={"environment": settings.APP_ENV, "log_level": level_name},
    )


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)


@contextmanager
def log_duration(logger: logging.Logger, message: str, **fields: Any) -> Iterator[dict[str, Any]]:
    """Log ``message`` at INFO when the block ends, with its wall time in seconds.

    The yielded dict may be filled inside the block; its entries are logged
    together with ``fields``.
    """
    extra: dict[str, Any] = dict(fields)
    start = time.perf_counter()
    try:
        yield extra
    finally:
        extra["seconds"] = round(time.perf_counter() - start, 3)
        logger.info(message, extra=extra)


def new_run_id() -> str:
    """Generate and install a fresh 8-character run ID."""
    value = uuid.uuid4().hex[:8]
    run_id.set(value)
    return value


def get_run_id() -> str | None:
    """Get the run ID of the current invocation, if any."""
    return run_id.get()
