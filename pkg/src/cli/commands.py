"""Command handlers: each turns parsed arguments into a report and an exit status."""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import TYPE_CHECKING

from ..core.config import get_settings
from ..core.exceptions import StateError
from ..models.catalog import TableName
from ..models.diagram import BicharacterMatrix, SimpleChainSpec
from ..models.groupoid import ExplorationCaps
from ..models.scalar import TorsionConfig, parse_scalar
from ..schemas.reports import (
    CatalogEntry,
    CatalogListing,
    ChainReport,
    CriteriaReport,
    DiagramSchema,
    EquivalenceReport,
    ExplorationReport,
    OrbitReport,
    RootsReport,
)
from ..services.catalog_repository import FileCatalogRepository
from ..services.catalog_service import CatalogService
from ..services.criteria import check_all
from ..services.diagram_service import (
    build_simple_chain,
    cartan_type_name,
    detect_cartan_type,
    from_key,
    is_path_graph,
    read_simple_chain_symbol,
)
from ..services.groupoid_service import WeylGroupoidExplorer
from ..services.sweep_service import SweepService
from ..utils.diagram_format import load_diagram
from ..utils.notation import format_basis, format_root
from .errors import ExitCode

if TYPE_CHECKING:
    import argparse
    from collections.abc import Callable

    from pydantic import BaseModel

    from ..models.diagram import DynkinDiagram

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CommandContext:
    """Run-wide configuration after applying command-line overrides."""

    config: TorsionConfig
    caps: ExplorationCaps
    sweep_caps: ExplorationCaps

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> CommandContext:
        """Validate the global flags against the settings.

        Raises:
            ConfigurationError: If the torsion order is odd
        """
        settings = get_settings()
        config = TorsionConfig(getattr(args, "torsion", settings.TORSION_ORDER))
        overrides = {}
        if hasattr(args, "cap_bases"):
            overrides["max_bases"] = args.cap_bases
        if hasattr(args, "cap_coeff"):
            overrides["max_coeff"] = args.cap_coeff
        return cls(
            config=config,
            caps=replace(ExplorationCaps.from_settings(), **overrides),
            sweep_caps=replace(ExplorationCaps.for_sweep(), **overrides),
        )

    def explorer(self) -> WeylGroupoidExplorer:
        return WeylGroupoidExplorer(caps=self.caps)

    def catalog(self, explorer: WeylGroupoidExplorer | None = None) -> CatalogService:
        return CatalogService(
            repository=FileCatalogRepository(config=self.config),
            explorer=explorer or self.explorer(),
            config=self.config,
        )

    def load(self, path: str) -> DynkinDiagram:
        return load_diagram(path, self.config)


CommandResult = tuple["BaseModel", ExitCode]


def classify(args: argparse.Namespace, ctx: CommandContext) -> CommandResult:
    diagram = ctx.load(args.file)
    explorer = ctx.explorer()
    result = explorer.explore(BicharacterMatrix.from_diagram(diagram))
    cartan = detect_cartan_type(diagram)
    chain = read_simple_chain_symbol(diagram)
    failure = None
    if result.failure is not None:
        f = result.failure
        failure = (
            f"a_{f.i + 1}{f.j + 1} undefined at basis {format_basis(f.basis)}"
        )
    report = ExplorationReport(
        source=args.file,
        verdict=result.verdict.value,
        diagram=DiagramSchema.from_diagram(diagram),
        num_bases=result.num_bases,
        num_positive_roots=(
            len(explorer.positive_roots(result)) if result.is_full_finite else None
        ),
        depth=result.depth,
        cartan_type=cartan_type_name(cartan) if cartan is not None else None,
        simple_chain=chain.symbol() if chain is not None else None,
        failure=failure,
    )
    return report, ExitCode.OK


def _root_order(vector: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return sum(vector), tuple(-x for x in vector)


def roots(args: argparse.Namespace, ctx: CommandContext) -> CommandResult:
    diagram = ctx.load(args.file)
    explorer = ctx.explorer()
    result = explorer.explore(BicharacterMatrix.from_diagram(diagram))
    positive = sorted(explorer.positive_roots(result), key=_root_order)
    report = RootsReport(
        source=args.file,
        verdict=result.verdict.value,
        count=len(positive),
        positive_roots=[format_root(v) for v in positive],
    )
    return report, ExitCode.OK


def equiv(args: argparse.Namespace, ctx: CommandContext) -> CommandResult:
    first = BicharacterMatrix.from_diagram(ctx.load(args.first))
    second = BicharacterMatrix.from_diagram(ctx.load(args.second))
    outcome = ctx.explorer().weyl_equivalent(first, second)
    report = EquivalenceReport(
        first=args.first,
        second=args.second,
        equivalent=outcome.equivalent,
        shared_diagram=(
            DiagramSchema.from_diagram(from_key(outcome.shared))
            if outcome.shared is not None
            else None
        ),
    )
    return report, ExitCode.OK


def chain(args: argparse.Namespace, ctx: CommandContext) -> CommandResult:
    spec = SimpleChainSpec(args.d, parse_scalar(args.q, ctx.config), tuple(args.indices))
    diagram = build_simple_chain(spec)
    report = ChainReport(symbol=spec.symbol(), diagram=DiagramSchema.from_diagram(diagram))
    return report, ExitCode.OK


def criteria(args: argparse.Namespace, ctx: CommandContext) -> CommandResult:
    diagram = ctx.load(args.file)
    report = CriteriaReport(
        source=args.file,
        diagram=DiagramSchema.from_diagram(diagram),
        predicates=check_all(diagram),
    )
    return report, ExitCode.OK


def orbit(args: argparse.Namespace, ctx: CommandContext) -> CommandResult:
    matrix = BicharacterMatrix.from_diagram(ctx.load(args.file))
    explorer = ctx.explorer()
    result = explorer.explore(matrix)
    if not result.is_full_finite:
        raise StateError(f"The orbit needs a full_finite groupoid, got {result.verdict.value}")
    keys = sorted(explorer.orbit_diagrams(matrix, result))
    diagrams = [from_key(key) for key in keys]
    report = OrbitReport(
        source=args.file,
        count=len(diagrams),
        path_graphs=sum(1 for x in diagrams if is_path_graph(x)),
        diagrams=[DiagramSchema.from_diagram(x) for x in diagrams],
    )
    return report, ExitCode.OK


def _status(passed: bool) -> ExitCode:
    return ExitCode.OK if passed else ExitCode.DISCREPANCY


def verify(args: argparse.Namespace, ctx: CommandContext) -> CommandResult:
    table = TableName(args.table) if getattr(args, "table", None) else None
    if args.suite == "tables":
        tables = ctx.catalog().verify_tables(table=table, rows=args.rows, ranks=args.ranks)
        return tables, _status(tables.passed)
    if args.suite == "appendix":
        appendix = ctx.catalog().verify_all_appendix(table)
        return appendix, _status(appendix.passed)
    sweep = SweepService(caps=ctx.sweep_caps).exhaustive_sweep(args.d, args.n)
    return sweep, _status(sweep.passed)


def catalog(args: argparse.Namespace, ctx: CommandContext) -> CommandResult:
    service = ctx.catalog()
    entries = []
    for row in service.repository.rows():
        if row.rank is not None:
            rank = str(row.rank)
        else:
            rank = f"d>={service.min_rank(row)}"
        entries.append(
            CatalogEntry(
                table=row.table.value,
                row=row.row,
                diagrams=len(row.diagrams),
                constraint=str(row.constraint),
                rank=rank,
            )
        )
    listing = CatalogListing(
        entries=entries, appendix_words=len(service.repository.appendix_words())
    )
    return listing, ExitCode.OK


HANDLERS: dict[str, Callable[[argparse.Namespace, CommandContext], CommandResult]] = {
    "classify": classify,
    "roots": roots,
    "equiv": equiv,
    "chain": chain,
    "criteria": criteria,
    "orbit": orbit,
    "verify": verify,
    "catalog": catalog,
}


def dispatch(args: argparse.Namespace, ctx: CommandContext) -> CommandResult:
    logger.debug("Running command", extra={"command": args.command})
    return HANDLERS[args.command](args, ctx)
