"""Unit tests for log formatting and run IDs."""

import json
import logging

from src.core.logging import (
    ColoredFormatter,
    JSONFormatter,
    get_run_id,
    log_duration,
    new_run_id,
)


def make_record(**extra):
    record = logging.LogRecord(
        "src.services.sweep_service", logging.INFO, "", 0, "Sweep finished", None, None
    )
    record.__dict__.update(extra)
    return record


class TestFormatters:
    def test_json_includes_run_id_and_extras(self):
        run = new_run_id()
        payload = json.loads(JSONFormatter().format(make_record(finite=3)))
        assert payload["message"] == "Sweep finished"
        assert payload["level"] == "INFO"
        assert payload["run_id"] == run
        assert payload["extra"] == {"finite": 3}

    def test_json_without_extras(self):
        payload = json.loads(JSONFormatter().format(make_record()))
        assert "extra" not in payload

    def test_colored_appends_extras(self):
        line = ColoredFormatter().format(make_record(rank=2, survivors=5))
        assert line.endswith("Sweep finished rank=2 survivors=5")
        assert "src.services.sweep_service:" in line


def test_new_run_id():
    first = new_run_id()
    assert len(first) == 8
    assert get_run_id() == first
    assert new_run_id() != first


def test_log_duration(caplog):
    logger = logging.getLogger("test.duration")
    with caplog.at_level(logging.INFO, logger="test.duration"):
        with log_duration(logger, "Block finished", rank=1) as fields:
            fields["survivors"] = 2
    record = caplog.records[-1]
    assert record.getMessage() == "Block finished"
    assert record.rank == 1
    assert record.survivors == 2
    assert record.seconds >= 0
