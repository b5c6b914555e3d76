"""Instantiation and verification of the classification catalog.

Rows are checked by exploring the first diagram of every Weyl class (a choice
of rank ``d``, index count ``j`` and parameter) and locating the remaining
diagrams of the row in its orbit. Appendix words are applied to the first
labelled path graph of their row.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import TYPE_CHECKING

from ..core.exceptions import (
    ConfigurationError,
    PreconditionError,
    WeylError,
)
from ..core.logging import log_duration
from ..models.catalog import AppendixWord, TableName, TableRow
from ..models.diagram import BicharacterMatrix
from ..models.groupoid import Basis
from ..models.scalar import Scalar, TorsionConfig, format_scalar
from ..schemas.reports import (
    AppendixEntryReport,
    AppendixReport,
    Issue,
    RowVerificationReport,
    TablesReport,
)
from ..utils.diagram_format import evaluate_expression, j_bounds, realize
from ..utils.notation import format_basis, format_root
from .diagram_service import (
    canonical_form,
    cartan_type_name,
    detect_cartan_type,
    is_connected,
    is_path_graph,
    to_dynkin,
)
from .groupoid_service import WeylGroupoidExplorer

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

    from ..models.diagram import DynkinDiagram
    from .catalog_repository import CatalogRepositoryInterface
    from .diagram_service import DiagramKey

logger = logging.getLogger(__name__)

# groupoids of rank above this are instantiated and Cartan-detected only
MAX_EXPLORED_RANK = 6


@dataclass(frozen=True)
class ClassSample:
    """First diagram of one Weyl class of a row, kept for cross-row checks."""

    table: TableName
    row: int
    d: int
    j: int | None
    param: Scalar
    matrix: BicharacterMatrix

    @property
    def subject(self) -> str:
        suffix = f" j={self.j}" if self.j is not None else ""
        return f"{self.table.value} row {self.row} d={self.d}{suffix} q={format_scalar(self.param)}"


def _subject(row: TableRow, d: int, j: int | None, param: Scalar, index: int | None = None) -> str:
    parts = [row.label, f"d={d}"]
    if j is not None:
        parts.append(f"j={j}")
    if index is not None:
        parts.append(f"diagram {index}")
    parts.append(f"q={format_scalar(param)}")
    return " ".join(parts)


class CatalogService:
    """Service layer over the catalog repository and the groupoid explorer."""

    def __init__(
        self,
        *,
        repository: CatalogRepositoryInterface,
        explorer: WeylGroupoidExplorer | None = None,
        config: TorsionConfig | None = None,
        verify_ranks: Sequence[int] | None = None,
        cross_row_pairs: int | None = None,
        workers: int | None = None,
    ) -> None:
        from ..core.config import get_settings

        settings = get_settings()
        self._repo = repository
        self._explorer = explorer or WeylGroupoidExplorer()
        self._config = config or TorsionConfig.from_settings()
        self._verify_ranks = tuple(verify_ranks or settings.VERIFY_RANKS)
        self._cross_row_pairs = (
            settings.CROSS_ROW_PAIRS if cross_row_pairs is None else cross_row_pairs
        )
        self._workers = workers or settings.WORKERS

    @property
    def repository(self) -> CatalogRepositoryInterface:
        return self._repo

    @property
    def explorer(self) -> WeylGroupoidExplorer:
        return self._explorer

    # --------------------------------------------------------- instantiation

    def sample_params(self, row: TableRow) -> list[Scalar]:
        return row.constraint.samples(self._config)

    def min_rank(self, row: TableRow) -> int:
        if row.rank is not None:
            return row.rank
        template = row.diagrams[0]
        low, _ = template.d_range  # type: ignore[misc]
        return evaluate_expression(low, {}, source=template.source)

    def ranks(self, row: TableRow, candidates: Sequence[int] | None = None) -> list[int]:
        """Ranks at which a row is verified, drawn from ``candidates`` for families."""
        if row.rank is not None:
            return [row.rank]
        low = self.min_rank(row)
        return [d for d in (candidates or self._verify_ranks) if d >= low]

    def j_values(self, row: TableRow, d: int) -> list[int | None]:
        if not row.uses_j:
            return [None]
        bounds = j_bounds(row.diagrams[0], d)
        assert bounds is not None
        return list(range(bounds[0], bounds[1] + 1))

    def instantiate_diagram(
        self,
        row: TableRow,
        which: int,
        *,
        param: Scalar,
        d: int | None = None,
        j: int | None = None,
    ) -> DynkinDiagram:
        """Diagram ``which`` (1-based) of ``row`` at a parameter, rank and ``j``.

        Raises:
            PreconditionError: If the parameter violates the row constraint or
                the diagram index is out of range
            ConfigurationError: If the parameter uses another torsion order
        """
        if not 1 <= which <= len(row.diagrams):
            raise PreconditionError(
                f"{row.label} has diagrams 1..{len(row.diagrams)}, not {which}"
            )
        template = row.diagrams[which - 1]
        if param.torsion != template.torsion:
            raise ConfigurationError(
                f"Parameter uses torsion order {param.torsion}, "
                f"catalog uses {template.torsion}"
            )
        if not row.constraint.admits(param):
            raise PreconditionError(
                f"Parameter {format_scalar(param)} violates the constraint "
                f"{row.constraint} of {row.label}",
                constraint=str(row.constraint),
            )
        if row.rank is not None:
            if d is not None and d != row.rank:
                raise PreconditionError(f"{row.label} has fixed rank {row.rank}, not {d}")
            d = None
        diagram = realize(template, param=param, d=d, j=j)
        if not is_connected(diagram):
            raise PreconditionError(f"Diagram {which} of {row.label} is not connected")
        return diagram

    def instantiate(
        self,
        row: TableRow,
        which: int,
        *,
        param: Scalar,
        d: int | None = None,
        j: int | None = None,
    ) -> BicharacterMatrix:
        """Concrete bicharacter with ``q_ij`` the edge label and ``q_ji = 1``."""
        diagram = self.instantiate_diagram(row, which, param=param, d=d, j=j)
        return BicharacterMatrix.from_diagram(diagram)

    # ---------------------------------------------------------- row checks

    def verify_row(
        self,
        row: TableRow,
        *,
        params: Sequence[Scalar] | None = None,
        ranks: Sequence[int] | None = None,
    ) -> RowVerificationReport:
        report, _ = self._verify_row(row, params=params, ranks=ranks)
        return report

    def _verify_row(
        self,
        row: TableRow,
        *,
        params: Sequence[Scalar] | None = None,
        ranks: Sequence[int] | None = None,
    ) -> tuple[RowVerificationReport, list[ClassSample]]:
        params = list(params or self.sample_params(row))
        ranks = [row.rank] if row.rank is not None else list(ranks or self.ranks(row))
        report = RowVerificationReport(
            table=row.table.value,
            row=row.row,
            params=[format_scalar(p) for p in params],
            ranks=ranks,
        )
        samples: list[ClassSample] = []
        cartan_names: set[str] = set()

        for d in ranks:
            for param in params:
                orbits: dict[int | None, frozenset[DiagramKey]] = {}
                for j in self.j_values(row, d):
                    sample = self._verify_class(row, d, j, param, report, cartan_names)
                    if sample is None:
                        continue
                    samples.append(sample)
                    if d <= MAX_EXPLORED_RANK:
                        orbits[j] = self._explorer.orbit_diagrams(sample.matrix)
                self._check_classes_distinct(row, d, param, orbits, samples, report)

        report.cartan_types = sorted(cartan_names)
        if report.issues:
            logger.warning(
                "Row verification failed",
                extra={"row": row.label, "issues": len(report.issues)},
            )
        else:
            logger.info("Row verified", extra={"row": row.label, "explored": report.explored})
        return report, samples

    def _verify_class(
        self,
        row: TableRow,
        d: int,
        j: int | None,
        param: Scalar,
        report: RowVerificationReport,
        cartan_names: set[str],
    ) -> ClassSample | None:
        try:
            diagrams = [
                self.instantiate_diagram(row, k, param=param, d=d, j=j)
                for k in range(1, len(row.diagrams) + 1)
            ]
        except WeylError as exc:
            report.issues.append(Issue(subject=_subject(row, d, j, param), message=exc.message))
            return None
        report.instances += len(diagrams)
        matrices = [BicharacterMatrix.from_diagram(x) for x in diagrams]
        first = matrices[0]
        cartan = detect_cartan_type(first)
        name = cartan_type_name(cartan) if cartan is not None else None
        if name:
            cartan_names.add(name)
        sample = ClassSample(row.table, row.row, d, j, param, first)
        if d > MAX_EXPLORED_RANK:
            return sample

        result = self._explorer.explore(first)
        report.explored += 1
        if not result.is_full_finite:
            report.issues.append(
                Issue(
                    subject=_subject(row, d, j, param, 1),
                    message=f"exploration ended with {result.verdict.value}",
                )
            )
            return None
        orbit = self._explorer.orbit_diagrams(first, result)
        for index, (diagram, matrix) in enumerate(zip(diagrams, matrices, strict=True), 1):
            if index == 1 or canonical_form(diagram) in orbit:
                continue
            other = self._explorer.explore(matrix)
            report.explored += 1
            message = (
                "not Weyl-equivalent to diagram 1"
                if other.is_full_finite
                else f"exploration ended with {other.verdict.value}"
            )
            report.issues.append(
                Issue(subject=_subject(row, d, j, param, index), message=message)
            )
        if cartan is None and not self._explorer.has_path_representative(first):
            report.issues.append(
                Issue(
                    subject=_subject(row, d, j, param),
                    message="orbit contains no labelled path graph",
                )
            )
        return sample

    def _check_classes_distinct(
        self,
        row: TableRow,
        d: int,
        param: Scalar,
        orbits: dict[int | None, frozenset[DiagramKey]],
        samples: Sequence[ClassSample],
        report: RowVerificationReport,
    ) -> None:
        by_j = {s.j: s for s in samples if s.d == d and s.param == param}
        for a, b in combinations(sorted(orbits, key=lambda j: j or 0), 2):
            key = canonical_form(to_dynkin(by_j[b].matrix))
            if key in orbits[a]:
                report.issues.append(
                    Issue(
                        subject=_subject(row, d, None, param),
                        message=f"classes j={a} and j={b} are Weyl-equivalent",
                    )
                )

    # --------------------------------------------------------- table checks

    def verify_tables(
        self,
        *,
        table: TableName | None = None,
        rows: Sequence[int] | None = None,
        ranks: Sequence[int] | None = None,
    ) -> TablesReport:
        """Verify rows and sampled pairs of classes from distinct rows."""
        selected = [
            r
            for r in self._repo.rows(table)
            if (rows is None or r.row in rows)
            and (not ranks or r.rank is None or r.rank in ranks)
        ]
        outcomes: list[tuple[RowVerificationReport, list[ClassSample]]]
        root = getattr(self._repo, "root", None)
        with log_duration(
            logger, "Tables verified", rows=len(selected), workers=self._workers
        ):
            if self._workers > 1 and len(selected) > 1 and root is not None:
                tasks = [
                    (root, r.table, r.row, tuple(ranks or ()), self._config.order)
                    for r in selected
                ]
                with ProcessPoolExecutor(max_workers=self._workers) as pool:
                    outcomes = list(pool.map(_verify_row_task, tasks))
            else:
                outcomes = [self._verify_row(r, ranks=ranks) for r in selected]

        report = TablesReport(rows=[o[0] for o in outcomes])
        samples = [s for o in outcomes for s in o[1] if s.d <= MAX_EXPLORED_RANK]
        self._check_cross_rows(samples, report)
        return report

    def cross_row_pairs(self, samples: Sequence[ClassSample]) -> list[tuple[ClassSample, ClassSample]]:
        """Evenly spaced pairs of classes from distinct rows of equal rank.

        Only the first parameter sample of each row takes part.
        """
        first_param: dict[tuple[TableName, int], Scalar] = {}
        for s in samples:
            first_param.setdefault((s.table, s.row), s.param)
        usable = [s for s in samples if s.param == first_param[(s.table, s.row)]]
        candidates = [
            (a, b)
            for a, b in combinations(usable, 2)
            if a.d == b.d and (a.table, a.row) != (b.table, b.row)
        ]
        count = min(self._cross_row_pairs, len(candidates))
        return [candidates[k * len(candidates) // count] for k in range(count)]

    def _check_cross_rows(self, samples: Sequence[ClassSample], report: TablesReport) -> None:
        pairs = self.cross_row_pairs(samples)
        report.cross_row_pairs = len(pairs)
        for a, b in pairs:
            try:
                outcome = self._explorer.weyl_equivalent(a.matrix, b.matrix)
            except WeylError as exc:
                report.issues.append(
                    Issue(subject=f"{a.subject} vs {b.subject}", message=exc.message)
                )
                continue
            if outcome.equivalent:
                report.issues.append(
                    Issue(
                        subject=f"{a.subject} vs {b.subject}",
                        message="distinct rows are Weyl-equivalent",
                    )
                )

    # ------------------------------------------------------ appendix checks

    def path_diagram(self, entry: AppendixWord) -> tuple[int, DynkinDiagram]:
        """First labelled path graph of the entry's row, with its 1-based index.

        Raises:
            PreconditionError: If no diagram of the row is a path graph
        """
        row = self._repo.row(entry.table, entry.row)
        param = self.sample_params(row)[0]
        for which in range(1, len(row.diagrams) + 1):
            diagram = self.instantiate_diagram(row, which, param=param, d=entry.d, j=entry.j)
            if is_path_graph(diagram):
                return which, diagram
        raise PreconditionError(f"{row.label} has no labelled path graph at d={entry.d}")

    def verify_appendix(self, entry: AppendixWord) -> AppendixEntryReport:
        """Apply a word and check the terminal basis, the printed chain and the induction step."""
        report = AppendixEntryReport(label=entry.label, word=str(entry.word))
        subject = entry.label
        try:
            _, diagram = self.path_diagram(entry)
            matrix = BicharacterMatrix.from_diagram(diagram)
            final, trace = self._explorer.apply_word(matrix, entry.word)
        except WeylError as exc:
            report.issues.append(Issue(subject=subject, message=exc.message))
            return report
        report.final_basis = format_basis(final)

        if entry.trace:
            report.trace_checked = True
            self._compare_trace(entry, trace, report)

        shape = self._explorer.terminal_shape(final)
        if shape is None:
            report.issues.append(
                Issue(
                    subject=subject,
                    message=f"final basis {report.final_basis} is not E with one "
                    "simple root replaced by a negative root",
                )
            )
            return report
        missing, alpha = shape
        report.removed_vertex = missing + 1
        report.alpha = format_root(alpha)

        if matrix.dim <= MAX_EXPLORED_RANK:
            result = self._explorer.explore(matrix)
            if not result.is_full_finite:
                report.issues.append(
                    Issue(subject=subject, message=f"exploration ended with {result.verdict.value}")
                )
            elif alpha not in self._explorer.positive_roots(result):
                report.issues.append(
                    Issue(subject=subject, message=f"{report.alpha} is not a positive root")
                )
        report.induction = self._explorer.witnesses_finiteness_induction(matrix, entry.word)
        if not report.induction:
            report.issues.append(
                Issue(subject=subject, message="remaining simple roots do not span a finite system")
            )
        return report

    def _compare_trace(
        self, entry: AppendixWord, trace: Sequence[Basis], report: AppendixEntryReport
    ) -> None:
        if len(trace) != len(entry.trace):
            report.issues.append(
                Issue(
                    subject=entry.label,
                    message=f"printed chain has {len(entry.trace)} bases, "
                    f"the word produces {len(trace)}",
                )
            )
            return
        for step, (computed, expected) in enumerate(zip(trace, entry.trace, strict=True)):
            if computed.vectors != expected:
                report.issues.append(
                    Issue(
                        subject=f"{entry.label} step {step}",
                        message=f"expected {format_basis(expected)}, "
                        f"computed {format_basis(computed)}",
                    )
                )

    def verify_all_appendix(self, table: TableName | None = None) -> AppendixReport:
        report = AppendixReport(
            entries=[self.verify_appendix(e) for e in self._repo.appendix_words(table)]
        )
        failed = [e.label for e in report.entries if not e.passed]
        if failed:
            logger.warning("Appendix words failed", extra={"entries": failed})
        return report


def _verify_row_task(
    task: tuple[Path, TableName, int, tuple[int, ...], int],
) -> tuple[RowVerificationReport, list[ClassSample]]:
    """Worker entry point: rebuild the service in the child process and verify one row."""
    from .catalog_repository import FileCatalogRepository

    root, table, number, ranks, torsion = task
    config = TorsionConfig(torsion)
    service = CatalogService(
        repository=FileCatalogRepository(root=root, config=config),
        config=config,
        workers=1,
    )
    row = service.repository.row(table, number)
    return service._verify_row(row, ranks=ranks or None)
