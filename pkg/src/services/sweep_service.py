"""Exhaustive enumeration of finite Weyl groupoids with labels in mu_n.

Connected diagrams of rank ``k + 1`` are grown from the full and finite
diagrams of rank ``k`` by attaching one vertex: every connected graph has a
vertex whose removal leaves it connected. A candidate is kept only if every
connected diagram obtained by deleting one vertex is itself a survivor, since
restrictions of finite systems are finite. The survivors of the requested rank
are compared with the table instantiations whose labels lie in mu_n.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import product
from typing import TYPE_CHECKING

from ..core.exceptions import ConfigurationError, WeylError
from ..core.logging import log_duration
from ..models.catalog import TableName
from ..models.diagram import BicharacterMatrix, DynkinDiagram
from ..models.groupoid import ExplorationCaps, Verdict
from ..models.scalar import TorsionConfig
from ..schemas.reports import DiagramSchema, Issue, SweepReport
from .catalog_repository import FileCatalogRepository
from .catalog_service import CatalogService
from .criteria import check_all, violations
from .diagram_service import (
    canonical_form,
    cartan_type_name,
    detect_cartan_type,
    from_key,
    is_connected,
)
from .groupoid_service import WeylGroupoidExplorer

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

    from ..models.scalar import Scalar
    from .catalog_repository import CatalogRepositoryInterface
    from .diagram_service import DiagramKey

logger = logging.getLogger(__name__)

MAX_SWEEP_RANK = 5


def sweep_torsion(n: int) -> int:
    """Torsion order ``lcm(4n, 2)`` shared by the labels and the table parameters."""
    return math.lcm(4 * n, 2)


def delete_vertex(diagram: DynkinDiagram, vertex: int) -> DynkinDiagram:
    keep = [k for k in range(diagram.dim) if k != vertex]
    return DynkinDiagram(
        tuple(diagram.vertices[k] for k in keep),
        tuple(tuple(diagram.edges[a][b] for b in keep) for a in keep),
    )


@dataclass
class _RankStats:
    candidates: int = 0
    pruned: int = 0
    cartan_shortcut: int = 0
    explored: int = 0
    cap_exceeded: int = 0
    survivors: dict[DiagramKey, DynkinDiagram] = field(default_factory=dict)


class SweepService:
    """Runs the exhaustive enumeration and the comparison with the tables."""

    def __init__(
        self,
        *,
        caps: ExplorationCaps | None = None,
        catalog_root: str | Path | None = None,
        repository: CatalogRepositoryInterface | None = None,
    ) -> None:
        self._caps = caps or ExplorationCaps.for_sweep()
        self._catalog_root = catalog_root
        self._repository = repository

    def exhaustive_sweep(self, d: int, n: int) -> SweepReport:
        """Enumerate connected diagrams of rank ``d`` over mu_n and classify them.

        Raises:
            ConfigurationError: If ``d`` or ``n`` is out of range
        """
        if not 1 <= d <= MAX_SWEEP_RANK:
            raise ConfigurationError(f"Sweep rank must lie in 1..{MAX_SWEEP_RANK}", d=d)
        if n < 2:
            raise ConfigurationError("Sweep labels need n >= 2", n=n)
        config = TorsionConfig(sweep_torsion(n))
        explorer = WeylGroupoidExplorer(caps=self._caps)
        logger.info(
            "Sweep started",
            extra={"d": d, "n": n, "torsion": config.order, "max_bases": self._caps.max_bases},
        )

        roots = [config.root(n, e) for e in range(n)]
        vertex_labels = [r for r in roots if not r.is_one()]
        stats = [_RankStats()]
        report = SweepReport(d=d, n=n)

        for rank in range(1, d + 1):
            current = _RankStats()
            with log_duration(logger, "Sweep rank finished", rank=rank) as fields:
                for diagram in self._candidates(rank, stats[-1], vertex_labels, roots, current):
                    self._classify(diagram, explorer, stats[-1], current)
                fields.update(candidates=current.candidates, survivors=len(current.survivors))
            stats.append(current)
            self._check_criteria(current, report)

        top = stats[-1]
        report.candidates = top.candidates
        report.pruned = top.pruned
        report.cartan_shortcut = top.cartan_shortcut
        report.explored = top.explored
        report.cap_exceeded = top.cap_exceeded
        report.finite = len(top.survivors)
        report.finite_by_rank = [len(s.survivors) for s in stats[1:]]
        report.survivors = [
            DiagramSchema.from_diagram(top.survivors[key]) for key in sorted(top.survivors)
        ]
        self._compare_with_tables(d, n, config, explorer, top, report)
        logger.info(
            "Sweep finished",
            extra={"finite": report.finite, "discrepancies": len(report.discrepancies)},
        )
        return report

    # ----------------------------------------------------------- enumeration

    def _candidates(
        self,
        rank: int,
        previous: _RankStats,
        vertex_labels: Sequence[Scalar],
        roots: Sequence[Scalar],
        current: _RankStats,
    ) -> list[DynkinDiagram]:
        if rank == 1:
            diagrams = [DynkinDiagram.from_labels([v], {}) for v in vertex_labels]
            current.candidates = len(diagrams)
            return diagrams

        seen: dict[DiagramKey, DynkinDiagram] = {}
        k = rank - 1
        for base_key in sorted(previous.survivors):
            base = previous.survivors[base_key]
            for label in vertex_labels:
                for attached in product(roots, repeat=k):
                    if all(x.is_one() for x in attached):
                        continue
                    edges = {
                        (a, b): base.edges[a][b] for a in range(k) for b in range(a + 1, k)
                    }
                    edges.update({(a, k): x for a, x in enumerate(attached)})
                    diagram = DynkinDiagram.from_labels([*base.vertices, label], edges)
                    seen.setdefault(canonical_form(diagram), diagram)
        current.candidates = len(seen)
        return [seen[key] for key in sorted(seen)]

    def _classify(
        self,
        diagram: DynkinDiagram,
        explorer: WeylGroupoidExplorer,
        previous: _RankStats,
        current: _RankStats,
    ) -> None:
        if diagram.dim > 1:
            for vertex in range(diagram.dim):
                rest = delete_vertex(diagram, vertex)
                if is_connected(rest) and canonical_form(rest) not in previous.survivors:
                    current.pruned += 1
                    return
        cartan = detect_cartan_type(diagram)
        if cartan is not None and cartan_type_name(cartan) is None:
            current.cartan_shortcut += 1
            return
        result = explorer.explore(BicharacterMatrix.from_diagram(diagram))
        current.explored += 1
        if result.verdict is Verdict.CAP_EXCEEDED:
            current.cap_exceeded += 1
        if result.is_full_finite:
            current.survivors[canonical_form(diagram)] = diagram

    @staticmethod
    def _check_criteria(stats: _RankStats, report: SweepReport) -> None:
        for key in sorted(stats.survivors):
            diagram = stats.survivors[key]
            for failed in violations(check_all(diagram)):
                report.discrepancies.append(
                    Issue(
                        subject=str(diagram),
                        message=f"finite diagram violates {failed.name}: {failed.detail}",
                    )
                )

    # ------------------------------------------------------------ comparison

    def _catalog(self, config: TorsionConfig) -> CatalogService:
        repository = self._repository or FileCatalogRepository(
            root=self._catalog_root, config=config
        )
        return CatalogService(repository=repository, config=config, workers=1)

    def table_instances(
        self, d: int, n: int, config: TorsionConfig | None = None
    ) -> dict[DiagramKey, str]:
        """Canonical keys of the table diagrams of rank ``d`` with labels in mu_n.

        Parameters range over mu_M with ``M = lcm(4n, 2)``; the value names the
        row the diagram came from.
        """
        config = config or TorsionConfig(sweep_torsion(n))
        if d < 4:
            return {}
        table = TableName.RANK4 if d == 4 else TableName.RANK_GE5
        catalog = self._catalog(config)
        params = [config.root(config.order, e) for e in range(config.order)]
        instances: dict[DiagramKey, str] = {}
        for row in catalog.repository.rows(table):
            if row.rank is not None and row.rank != d:
                continue
            if row.rank is None and d not in catalog.ranks(row, [d]):
                continue
            for param in params:
                if not row.constraint.admits(param):
                    continue
                for j in catalog.j_values(row, d):
                    for which in range(1, len(row.diagrams) + 1):
                        try:
                            diagram = catalog.instantiate_diagram(
                                row, which, param=param, d=d, j=j
                            )
                        except WeylError:
                            continue
                        orders = [v.order() for v in diagram.vertices] + [
                            x.order() for _, _, x in diagram.edge_list()
                        ]
                        if all(o is not None and n % o == 0 for o in orders):
                            instances.setdefault(canonical_form(diagram), row.label)
        return instances

    def _compare_with_tables(
        self,
        d: int,
        n: int,
        config: TorsionConfig,
        explorer: WeylGroupoidExplorer,
        top: _RankStats,
        report: SweepReport,
    ) -> None:
        instances = self.table_instances(d, n, config)
        report.instantiations = len(instances)
        if not instances:
            return
        for key in sorted(top.survivors):
            matrix = BicharacterMatrix.from_diagram(top.survivors[key])
            if explorer.orbit_diagrams(matrix) & instances.keys():
                report.matched += 1
            else:
                report.discrepancies.append(
                    Issue(
                        subject=str(top.survivors[key]),
                        message="finite diagram matches no table row",
                    )
                )
        for key in sorted(instances):
            if key in top.survivors:
                report.instantiations_found += 1
            else:
                report.discrepancies.append(
                    Issue(
                        subject=f"{instances[key]}: {from_key(key)}",
                        message="table diagram is missing from the finite survivors",
                    )
                )
