"""Parsers for the thesaurus, interaction, and generic edge-list formats."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

from .graph import Graph, LabelMap, build_graph

logger = logging.getLogger(__name__)


class ParseError(ValueError):
    """Raised when an input stream cannot be parsed."""


@dataclass(frozen=True)
class ThesaurusRecord:
    """One thesaurus entry: a root word and its listed synonyms."""

    root: str
    synonyms: tuple[str, ...]


@dataclass(frozen=True)
class IngestReport:
    """Link bookkeeping for root-filtered thesaurus ingestion."""

    raw_link_count: int
    kept_link_count: int
    root_count: int
    dropped_non_root_links: int


def _lines(source: str | IO[str] | Iterable[str]) -> Iterator[str]:
    if isinstance(source, str):
        return iter(source.splitlines())
    return iter(source)


def parse_moby(source: str | IO[str] | Iterable[str]) -> list[ThesaurusRecord]:
    """Parse comma-separated thesaurus lines; field 1 is the root word.

    Fields are trimmed of surrounding whitespace and empty fields dropped,
    so multi-word synonyms survive intact. Non-blank lines that yield no
    fields are skipped (with a warning count) rather than aborting the run.
    """
    records: list[ThesaurusRecord] = []
    skipped = 0
    for line in _lines(source):
        if not line.strip():
            continue
        fields = [field.strip() for field in line.split(",")]
        fields = [field for field in fields if field]
        if not fields:
            skipped += 1
            continue
        records.append(ThesaurusRecord(fields[0], tuple(fields[1:])))
    if skipped:
        logger.warning("skipped %d malformed thesaurus line(s)", skipped)
    return records


def moby_to_graph(
    records: list[ThesaurusRecord],
) -> tuple[Graph, LabelMap, IngestReport]:
    """Build the root-filtered directed synonym graph.

    Only root words become nodes; a root->synonym link is kept iff the
    synonym is itself a root word. Matching is exact string equality after
    whitespace trim (done at parse time), case-sensitive.
    """
    if not records:
        raise ParseError("no thesaurus records: cannot build graph without root words")
    root_ids: dict[str, int] = {}
    roots: list[str] = []
    for record in records:
        if record.root not in root_ids:
            root_ids[record.root] = len(roots)
            roots.append(record.root)

    raw = 0
    kept_pairs: list[tuple[int, int]] = []
    for record in records:
        u = root_ids[record.root]
        for synonym in record.synonyms:
            raw += 1
            target = root_ids.get(synonym)
            if target is not None:
                kept_pairs.append((u, target))
    kept = len(kept_pairs)

    graph = Graph.from_edge_ids(len(roots), kept_pairs, directed=True)
    labels = LabelMap.from_labels(roots)
    report = IngestReport(
        raw_link_count=raw,
        kept_link_count=kept,
        root_count=len(roots),
        dropped_non_root_links=raw - kept,
    )
    return graph, labels, report


def _parse_pair_lines(
    source: str | IO[str] | Iterable[str], directed: bool
) -> tuple[Graph, LabelMap]:
    edges: list[tuple[str, str]] = []
    for lineno, line in enumerate(_lines(source), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) < 2:
            raise ParseError(
                f"line {lineno}: expected at least two whitespace-separated columns"
            )
        edges.append((tokens[0], tokens[1]))
    return build_graph(edges, directed=directed)


def parse_biogrid(source: str | IO[str] | Iterable[str]) -> tuple[Graph, LabelMap]:
    """Parse a two-column interaction extract into an undirected graph.

    Lines starting with '#' are comments; extra columns are ignored. A data
    line with fewer than two tokens aborts the parse, since silently losing
    edges would corrupt an interaction network.
    """
    return _parse_pair_lines(source, directed=False)


def parse_edge_list(
    source: str | IO[str] | Iterable[str], directed: bool = False
) -> tuple[Graph, LabelMap]:
    """Parse a generic whitespace-separated edge list (tab or space)."""
    return _parse_pair_lines(source, directed=directed)
