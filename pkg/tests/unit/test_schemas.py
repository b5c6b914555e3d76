"""Unit tests for report schemas."""

import pytest
from pydantic import ValidationError

from src.schemas.reports import (
    CriteriaReport,
    DiagramSchema,
    Issue,
    PredicateReport,
    RowVerificationReport,
    SweepReport,
    TablesReport,
)


class TestDiagramSchema:
    def test_from_diagram_is_one_based(self, a4):
        schema = DiagramSchema.from_diagram(a4)
        assert schema.dim == 4
        assert schema.vertices == ["q"] * 4
        assert schema.edges == [(1, 2, "q^-1"), (2, 3, "q^-1"), (3, 4, "q^-1")]

    def test_dim_must_be_positive(self):
        with pytest.raises(ValidationError):
            DiagramSchema(dim=0, vertices=[])


class TestComputedFields:
    """Tests for fields derived from the other fields."""

    def test_violated(self):
        assert PredicateReport(name="p", applicable=True, satisfied=False).violated
        assert not PredicateReport(name="p", applicable=False, satisfied=False).violated
        assert not PredicateReport(name="p", applicable=True, satisfied=True).violated

    def test_violation_count(self, a4):
        report = CriteriaReport(
            source="a4",
            diagram=DiagramSchema.from_diagram(a4),
            predicates=[
                PredicateReport(name="a", applicable=True, satisfied=False),
                PredicateReport(name="b", applicable=True, satisfied=True),
            ],
        )
        assert report.violations == 1
        assert report.model_dump()["violations"] == 1

    def test_row_passed(self):
        row = RowVerificationReport(table="rank4", row=3)
        assert row.passed
        row.issues.append(Issue(subject="rank4 row 3", message="not finite"))
        assert not row.passed

    def test_tables_passed_needs_every_row(self):
        failing = RowVerificationReport(
            table="rank4", row=1, issues=[Issue(subject="x", message="y")]
        )
        assert not TablesReport(rows=[failing]).passed
        assert TablesReport(rows=[RowVerificationReport(table="rank4", row=2)]).passed

    def test_sweep_passed(self):
        assert SweepReport(d=2, n=2).passed
        report = SweepReport(d=2, n=2, discrepancies=[Issue(subject="s", message="m")])
        assert not report.passed

    def test_sweep_needs_n_at_least_two(self):
        with pytest.raises(ValidationError):
            SweepReport(d=2, n=1)
