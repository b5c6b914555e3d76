"""Repository for the checked-in classification catalog."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from collections import defaultdict
from pathlib import Path
from typing import TYPE_CHECKING

from ..core.exceptions import DiagramFormatError, WeylError
from ..models.catalog import AppendixWord, ParameterConstraint, TableName, TableRow
from ..models.groupoid import ReflectionWord
from ..utils.diagram_format import expand_items, load_template
from ..utils.notation import parse_basis

if TYPE_CHECKING:
    from ..models.catalog import DiagramTemplate
    from ..models.scalar import TorsionConfig

logger = logging.getLogger(__name__)

MANIFEST_FILE = "manifest.txt"
APPENDIX_FILE = "appendix.txt"


class CatalogRepositoryInterface(ABC):
    """Read access to table rows and appendix words."""

    @abstractmethod
    def rows(self, table: TableName | None = None) -> list[TableRow]:
        """Return all rows of ``table`` (every table when ``None``) in row order."""

    @abstractmethod
    def row(self, table: TableName, number: int) -> TableRow:
        """Return a single row, raising ``DiagramFormatError`` when it is absent."""

    @abstractmethod
    def appendix_words(self, table: TableName | None = None) -> list[AppendixWord]:
        """Return the reflection words of ``table`` in file order."""


def _table(text: str, source: str, line: int) -> TableName:
    try:
        return TableName(text)
    except ValueError:
        raise DiagramFormatError(f"Unknown table {text!r}", source=source, line=line) from None


def _integer(text: str, what: str, source: str, line: int) -> int:
    if not text.isdigit() or int(text) < 1:
        raise DiagramFormatError(f"{what} must be a positive integer, got {text!r}", source=source, line=line)
    return int(text)


def _options(tokens: list[str], source: str, line: int) -> dict[str, int]:
    options = {}
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep or key not in ("d", "j"):
            raise DiagramFormatError(f"Unknown option {token!r}", source=source, line=line)
        options[key] = _integer(value, key, source, line)
    return options


def _content_lines(path: Path) -> list[tuple[int, str]]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DiagramFormatError(f"Cannot read catalog file: {exc.strerror}", source=str(path)) from exc
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            lines.append((number, content))
    return lines


class FileCatalogRepository(CatalogRepositoryInterface):
    """Catalog stored as a manifest, diagram files and an appendix file.

    Files are parsed lazily on first access and kept in memory.
    """

    def __init__(self, *, root: str | Path | None = None, config: TorsionConfig | None = None) -> None:
        if root is None:
            from ..core.config import get_settings

            root = get_settings().catalog_path
        self._root = Path(root)
        self._config = config
        self._rows: dict[tuple[TableName, int], TableRow] | None = None
        self._words: list[AppendixWord] | None = None

    @property
    def root(self) -> Path:
        return self._root

    def rows(self, table: TableName | None = None) -> list[TableRow]:
        rows = self._load_rows()
        return [
            rows[key] for key in sorted(rows) if table is None or key[0] is table
        ]

    def row(self, table: TableName, number: int) -> TableRow:
        rows = self._load_rows()
        try:
            return rows[(table, number)]
        except KeyError:
            raise DiagramFormatError(
                f"No row {number} in table {table.value}", source=str(self._root / MANIFEST_FILE)
            ) from None

    def appendix_words(self, table: TableName | None = None) -> list[AppendixWord]:
        if self._words is None:
            self._words = self._parse_appendix()
        return [w for w in self._words if table is None or w.table is table]

    # ------------------------------------------------------------- manifest

    def _load_rows(self) -> dict[tuple[TableName, int], TableRow]:
        if self._rows is None:
            self._rows = self._parse_manifest()
            logger.debug("Catalog loaded", extra={"rows": len(self._rows), "root": str(self._root)})
        return self._rows

    def _parse_manifest(self) -> dict[tuple[TableName, int], TableRow]:
        path = self._root / MANIFEST_FILE
        source = str(path)
        entries: dict[tuple[TableName, int], list[tuple[int, DiagramTemplate]]] = defaultdict(list)
        meta: dict[tuple[TableName, int], tuple[ParameterConstraint, int | None]] = {}

        for number, content in _content_lines(path):
            tokens = content.split()
            if len(tokens) < 5:
                raise DiagramFormatError(
                    "Expected 'TABLE ROW INDEX FILE CONSTRAINT [d=N]'", source=source, line=number
                )
            table = _table(tokens[0], source, number)
            row = _integer(tokens[1], "Row", source, number)
            index = _integer(tokens[2], "Index", source, number)
            try:
                constraint = ParameterConstraint.parse(tokens[4])
            except DiagramFormatError as exc:
                raise DiagramFormatError(exc.message, source=source, line=number) from exc
            rank = _options(tokens[5:], source, number).get("d")
            if table is TableName.RANK4:
                rank = 4
            key = (table, row)
            if meta.setdefault(key, (constraint, rank)) != (constraint, rank):
                raise DiagramFormatError(
                    f"Conflicting constraint or rank for {table.value} row {row}",
                    source=source,
                    line=number,
                )
            try:
                template = load_template(self._root / tokens[3], self._config)
            except DiagramFormatError:
                raise
            except WeylError as exc:
                raise DiagramFormatError(exc.message, source=tokens[3]) from exc
            entries[key].append((index, template))

        rows: dict[tuple[TableName, int], TableRow] = {}
        for key, items in entries.items():
            items.sort(key=lambda item: item[0])
            if [i for i, _ in items] != list(range(1, len(items) + 1)):
                raise DiagramFormatError(
                    f"Diagram indices of {key[0].value} row {key[1]} are not 1..{len(items)}",
                    source=source,
                )
            constraint, rank = meta[key]
            templates = tuple(t for _, t in items)
            if rank is None and not all(t.is_family for t in templates):
                raise DiagramFormatError(
                    f"{key[0].value} row {key[1]} needs d=N or family templates", source=source
                )
            rows[key] = TableRow(key[0], key[1], constraint, templates, rank)
        return rows

    # ------------------------------------------------------------- appendix

    def _parse_appendix(self) -> list[AppendixWord]:
        path = self._root / APPENDIX_FILE
        source = str(path)
        words: list[AppendixWord] = []
        for number, content in _content_lines(path):
            head, sep, body = content.partition(":")
            tokens = head.split()
            if not sep or len(tokens) < 3 or tokens[0] not in ("word", "trace"):
                raise DiagramFormatError(
                    "Expected 'word TABLE ROW [d=N] [j=N] : LETTERS' or 'trace TABLE ROW : TUPLES'",
                    source=source,
                    line=number,
                )
            table = _table(tokens[1], source, number)
            row = _integer(tokens[2], "Row", source, number)
            options = _options(tokens[3:], source, number)

            if tokens[0] == "word":
                d = 4 if table is TableName.RANK4 else options.get("d")
                if d is None:
                    raise DiagramFormatError("Word needs d=N", source=source, line=number)
                letters = expand_items(body.split(), {"d": d}, descending=True, source=source)
                word = ReflectionWord.from_printed(letters)
                if any(x >= d for x in word.letters):
                    raise DiagramFormatError(
                        f"Word letters exceed the rank {d}", source=source, line=number
                    )
                words.append(AppendixWord(table, row, d, word, options.get("j")))
                continue

            owner = next(
                (k for k in range(len(words) - 1, -1, -1) if (words[k].table, words[k].row) == (table, row)),
                None,
            )
            if owner is None:
                raise DiagramFormatError("Trace without a preceding word", source=source, line=number)
            entry = words[owner]
            try:
                trace = tuple(parse_basis(token, entry.d) for token in body.split())
            except DiagramFormatError as exc:
                raise DiagramFormatError(exc.message, source=source, line=number) from exc
            words[owner] = AppendixWord(entry.table, entry.row, entry.d, entry.word, entry.j, trace)
        return words
