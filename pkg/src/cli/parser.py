"""Argument parser for the ``weyl-groupoid`` command."""

from __future__ import annotations

import argparse

from ..models.catalog import TableName

DESCRIPTION = """\
Exact computations with Weyl groupoids of diagonal-type bicharacters.

Diagram files list vertex labels q_ii and edge labels q_ij q_ji, one per line
("v 1 q", "e 1 2 q^-1"). Vertices, letters and indices are 1-based.
"""


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _global_flags() -> argparse.ArgumentParser:
    """Flags accepted both before and after the subcommand."""
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument(
        "--torsion",
        type=_positive,
        default=argparse.SUPPRESS,
        help="order N of the roots of unity mu_N (default: TORSION_ORDER)",
    )
    flags.add_argument(
        "--cap-bases",
        type=_positive,
        default=argparse.SUPPRESS,
        help="stop an exploration after this many bases",
    )
    flags.add_argument(
        "--cap-coeff",
        type=_positive,
        default=argparse.SUPPRESS,
        help="stop an exploration once a coordinate exceeds this bound",
    )
    flags.add_argument(
        "--json", action="store_true", default=argparse.SUPPRESS, help="print JSON"
    )
    flags.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=argparse.SUPPRESS,
        help="logging level on stderr (default: LOG_LEVEL)",
    )
    return flags


def build_parser() -> argparse.ArgumentParser:
    flags = _global_flags()
    parser = argparse.ArgumentParser(
        prog="weyl-groupoid",
        description=DESCRIPTION,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        parents=[flags],
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    tables = [t.value for t in TableName]

    classify = commands.add_parser(
        "classify", parents=[flags], help="explore a diagram and report its verdict"
    )
    classify.add_argument("file")

    roots = commands.add_parser("roots", parents=[flags], help="print the positive roots")
    roots.add_argument("file")

    equiv = commands.add_parser(
        "equiv", parents=[flags], help="decide Weyl equivalence of two diagrams"
    )
    equiv.add_argument("first")
    equiv.add_argument("second")

    chain = commands.add_parser(
        "chain", parents=[flags], help="build the simple chain C(d,q;I)"
    )
    chain.add_argument("d", type=_positive)
    chain.add_argument("q", help="scalar literal such as q, z5 or -q^-1")
    chain.add_argument("indices", type=_positive, nargs="*")

    criteria = commands.add_parser(
        "criteria", parents=[flags], help="evaluate necessary conditions for finiteness"
    )
    criteria.add_argument("file")

    orbit = commands.add_parser(
        "orbit", parents=[flags], help="list the diagrams of the Weyl groupoid orbit"
    )
    orbit.add_argument("file")

    verify = commands.add_parser("verify", help="run the catalog verification suites")
    suites = verify.add_subparsers(dest="suite", required=True, metavar="SUITE")
    verify_tables = suites.add_parser(
        "tables", parents=[flags], help="explore and compare every table row"
    )
    verify_tables.add_argument("--table", choices=tables)
    verify_tables.add_argument("--row", type=_positive, action="append", dest="rows")
    verify_tables.add_argument("--rank", type=_positive, action="append", dest="ranks")
    verify_appendix = suites.add_parser(
        "appendix", parents=[flags], help="apply the reflection words of the appendix"
    )
    verify_appendix.add_argument("--table", choices=tables)
    verify_sweep = suites.add_parser(
        "sweep", parents=[flags], help="enumerate all diagrams over mu_n"
    )
    verify_sweep.add_argument("d", type=_positive)
    verify_sweep.add_argument("n", type=_positive)

    catalog = commands.add_parser("catalog", help="inspect the catalog")
    catalog_commands = catalog.add_subparsers(dest="action", required=True, metavar="ACTION")
    catalog_commands.add_parser("list", parents=[flags], help="list the table rows")

    return parser
