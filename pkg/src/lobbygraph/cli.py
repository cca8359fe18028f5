"""Command-line front end wiring ingest -> centrality -> analysis.

Emits TSV artifacts ready for external plotting. Exit codes are a stable
scripting contract: 0 success, 2 input/config error, 3 partial analysis
failure (some outputs skipped, the rest emitted).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path

import click
import numpy as np

from .analysis import (
    AnalysisError,
    dispersion,
    envelope_exponent,
    generate_ba,
    pearson,
    rank_table,
    spearman,
)
from .centrality import (
    MEASURES,
    CentralityError,
    CentralityVector,
    betweenness,
    degree_centrality,
    eigenvector_centrality,
    lobby_index,
)
from .graph import GraphError, LabelMap
from .ingest import ParseError, moby_to_graph, parse_biogrid, parse_edge_list, parse_moby

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_PARTIAL = 3

EXPENSIVE_EDGE_COUNT = 1_000_000

_MEASURE_ALIASES = {"d": "degree", "l": "lobby", "b": "betweenness", "e": "eigenvector"}
_DEFAULT_FIT_XMIN = {"degree": 100.0, "eigenvector": 0.2}
_INTEGER_MEASURES = ("degree", "lobby")
_CENTRALITY_COLUMNS = ("node_id", "label") + MEASURES


@dataclass
class RunConfig:
    """Resolved options for one CLI invocation."""

    input_path: Path | None = None
    format: str = "edgelist"
    directed: bool | None = None
    measures: tuple[str, ...] = MEASURES
    tol: float = 1e-10
    max_iter: int = 10_000
    output_dir: Path = Path(".")
    k: int = 25
    x_min: float | None = None
    bins_per_decade: int = 8
    threads: int | None = None
    seed: int = 0
    confirm_expensive: bool = False


def _fail(message: str, code: int = EXIT_INPUT_ERROR) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _fmt(value: float | int | None) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".10g")


def _parse_measures(raw: str) -> tuple[str, ...]:
    chosen: set[str] = set()
    for token in raw.split(","):
        token = token.strip().lower()
        if not token:
            continue
        name = _MEASURE_ALIASES.get(token, token)
        if name not in MEASURES:
            raise click.BadParameter(f"unknown measure {token!r}")
        chosen.add(name)
    if not chosen:
        raise click.BadParameter("at least one measure is required")
    return tuple(m for m in MEASURES if m in chosen)


def _write_lines(path: Path, lines: list[str]) -> None:
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    click.echo(f"wrote {path}", err=True)


@click.group()
def main() -> None:
    """Centrality measures and ranking analysis for large sparse graphs."""


@main.command()
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["moby", "biogrid", "edgelist"]),
    default="edgelist",
    show_default=True,
)
@click.option(
    "--directed/--undirected",
    "directed",
    default=None,
    help="Directedness for edgelist input (moby is directed, biogrid undirected).",
)
@click.option("--measures", default="d,l,b,e", show_default=True)
@click.option("--tol", type=float, default=1e-10, show_default=True)
@click.option("--max-iter", type=int, default=10_000, show_default=True)
@click.option("--threads", type=int, default=None, help="Worker count for betweenness.")
@click.option(
    "--out",
    "out_dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=".",
    show_default=True,
)
@click.option(
    "--confirm-expensive",
    is_flag=True,
    help="Allow betweenness on graphs with more than 10^6 edges.",
)
def compute(
    input_path: Path,
    fmt: str,
    directed: bool | None,
    measures: str,
    tol: float,
    max_iter: int,
    threads: int | None,
    out_dir: Path,
    confirm_expensive: bool,
) -> None:
    """Parse INPUT_PATH and write centrality.tsv (plus ingest_report.txt for moby)."""
    config = RunConfig(
        input_path=input_path,
        format=fmt,
        directed=directed,
        measures=_parse_measures(measures),
        tol=tol,
        max_iter=max_iter,
        output_dir=out_dir,
        threads=threads,
        confirm_expensive=confirm_expensive,
    )
    if config.tol <= 0:
        _fail("--tol must be positive")
    if config.max_iter < 1:
        _fail("--max-iter must be at least 1")

    report = None
    try:
        with open(input_path, "r", encoding="utf-8") as handle:
            if fmt == "moby":
                if directed is False:
                    _fail("moby format is inherently directed")
                graph, labels, report = moby_to_graph(parse_moby(handle))
            elif fmt == "biogrid":
                if directed is True:
                    _fail("biogrid format is inherently undirected")
                graph, labels = parse_biogrid(handle)
            else:
                graph, labels = parse_edge_list(handle, directed=bool(directed))
    except (ParseError, GraphError, OSError, UnicodeDecodeError) as exc:
        _fail(str(exc))

    if (
        "betweenness" in config.measures
        and graph.edge_count > EXPENSIVE_EDGE_COUNT
        and not confirm_expensive
    ):
        _fail(
            f"betweenness on {graph.edge_count} edges is expensive; re-run with "
            "--confirm-expensive or drop 'b' from --measures"
        )

    vectors: dict[str, CentralityVector | None] = {m: None for m in MEASURES}
    try:
        if "degree" in config.measures:
            vectors["degree"] = degree_centrality(graph)
        if "lobby" in config.measures:
            vectors["lobby"] = lobby_index(graph)
        if "betweenness" in config.measures:
            vectors["betweenness"] = betweenness(graph, threads=config.threads)
        if "eigenvector" in config.measures:
            vectors["eigenvector"] = eigenvector_centrality(
                graph, tol=config.tol, max_iter=config.max_iter
            )
    except CentralityError as exc:
        _fail(str(exc))

    eig = vectors["eigenvector"]
    if eig is not None and not eig.converged:
        click.echo(
            "warning: eigenvector power iteration did not converge "
            f"within {config.max_iter} sweeps",
            err=True,
        )

    out_dir.mkdir(parents=True, exist_ok=True)
    lines = []
    if eig is not None and not eig.converged:
        lines.append("# eigenvector converged=false")
    lines.append("\t".join(_CENTRALITY_COLUMNS))
    for v in range(graph.node_count):
        row = [str(v), labels.label_of(v)]
        for measure in MEASURES:
            vec = vectors[measure]
            row.append(_fmt(vec.values[v]) if vec is not None else "")
        lines.append("\t".join(row))
    _write_lines(out_dir / "centrality.tsv", lines)

    if report is not None:
        _write_lines(
            out_dir / "ingest_report.txt",
            [
                "# ingest report (moby)",
                f"raw_link_count\t{report.raw_link_count}",
                f"kept_link_count\t{report.kept_link_count}",
                f"root_count\t{report.root_count}",
                f"dropped_non_root_links\t{report.dropped_non_root_links}",
            ],
        )
    sys.exit(EXIT_OK)


def _read_centrality(path: Path) -> tuple[list[str], dict[str, np.ndarray]]:
    """Read centrality.tsv back into labels plus per-measure float arrays."""
    with open(path, "r", encoding="utf-8") as handle:
        rows = [
            line.rstrip("\n").split("\t")
            for line in handle
            if line.strip() and not line.startswith("#")
        ]
    if not rows:
        raise ParseError(f"{path}: empty file")
    header = rows[0]
    if header != list(_CENTRALITY_COLUMNS):
        missing = [c for c in _CENTRALITY_COLUMNS if c not in header]
        raise ParseError(f"{path}: missing column(s) {missing}" if missing else f"{path}: bad header")
    data = rows[1:]
    if not data:
        raise ParseError(f"{path}: no data rows")
    width = len(_CENTRALITY_COLUMNS)
    for row in data:
        if len(row) != width:
            raise ParseError(f"{path}: row with {len(row)} fields, expected {width}")
    data.sort(key=lambda row: int(row[0]))
    labels = [row[1] for row in data]
    columns: dict[str, np.ndarray] = {}
    for j, measure in enumerate(MEASURES, start=2):
        cells = [row[j] for row in data]
        if all(cells):
            columns[measure] = np.array([float(c) for c in cells], dtype=np.float64)
    return labels, columns


def _as_vector(measure: str, values: np.ndarray) -> CentralityVector:
    if measure in _INTEGER_MEASURES and np.all(values == np.floor(values)):
        return CentralityVector(measure, values.astype(np.int64))
    normalization = "max-one" if measure == "eigenvector" else "raw"
    return CentralityVector(measure, values.copy(), normalization=normalization)


@main.command()
@click.argument(
    "centrality_file", type=click.Path(exists=True, dir_okay=False, path_type=Path)
)
@click.option("--k", type=int, default=25, show_default=True)
@click.option(
    "--xmin",
    "x_min",
    type=float,
    default=None,
    help="Regime lower bound for envelope fits (defaults: degree 100, eigenvector 0.2).",
)
@click.option("--bins-per-decade", type=int, default=8, show_default=True)
@click.option(
    "--out",
    "out_dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=".",
    show_default=True,
)
def analyze(
    centrality_file: Path,
    k: int,
    x_min: float | None,
    bins_per_decade: int,
    out_dir: Path,
) -> None:
    """Emit dispersion, envelope-fit, rank-table, and correlation files."""
    if k < 1:
        _fail("--k must be at least 1")
    try:
        labels, columns = _read_centrality(centrality_file)
    except (ParseError, ValueError, OSError) as exc:
        _fail(str(exc))
    if "lobby" not in columns:
        _fail(f"{centrality_file}: lobby column is required for analysis")

    out_dir.mkdir(parents=True, exist_ok=True)
    skipped: list[str] = []
    vectors = {m: _as_vector(m, vals) for m, vals in columns.items()}
    label_map = LabelMap.from_labels(labels)
    lobby = vectors["lobby"]

    for x_measure in ("degree", "betweenness", "eigenvector"):
        if x_measure not in vectors:
            continue
        series = dispersion(vectors[x_measure], lobby)
        lines = [f"{x_measure}\tlobby\tlabel"]
        lines += [
            f"{_fmt(xv)}\t{_fmt(yv)}\t{labels[node]}" for xv, yv, node in series.points()
        ]
        _write_lines(out_dir / f"dispersion_{x_measure}_vs_lobby.tsv", lines)

        if x_measure in _DEFAULT_FIT_XMIN:
            fit_x_min = x_min if x_min is not None else _DEFAULT_FIT_XMIN[x_measure]
            try:
                fit = envelope_exponent(series, fit_x_min, bins_per_decade)
            except AnalysisError as exc:
                skipped.append(f"fit {x_measure} vs lobby: {exc}")
                continue
            _write_lines(
                out_dir / f"fit_{x_measure}_vs_lobby.txt",
                [
                    f"# envelope fit {x_measure} vs lobby",
                    f"exponent\t{_fmt(fit.exponent)}",
                    f"r_squared\t{_fmt(fit.r_squared)}",
                    f"x_min\t{_fmt(fit.x_min)}",
                    f"intercept\t{_fmt(fit.intercept)}",
                    f"bin_count\t{fit.bin_count}",
                    f"excluded_points\t{fit.excluded_points}",
                ],
            )

    for measure in MEASURES:
        if measure not in vectors:
            continue
        table = rank_table(label_map, vectors, order_by=measure, k=k)
        lines = ["rank\tlabel\tlobby\teigenvector\tdegree\tbetweenness"]
        for row in table.rows:
            lines.append(
                "\t".join(
                    [
                        str(row.rank),
                        row.label,
                        _fmt(row.lobby),
                        _fmt(row.eigenvector),
                        _fmt(row.degree),
                        _fmt(row.betweenness),
                    ]
                )
            )
        _write_lines(out_dir / f"rank_{measure}.tsv", lines)

    present = [m for m in MEASURES if m in vectors]
    corr_lines = ["measure_a\tmeasure_b\tspearman\tpearson"]
    for i, a in enumerate(present):
        for b in present[i + 1 :]:
            try:
                s = spearman(vectors[a], vectors[b])
                p = pearson(vectors[a], vectors[b])
            except AnalysisError as exc:
                skipped.append(f"correlation {a} vs {b}: {exc}")
                continue
            corr_lines.append(f"{a}\t{b}\t{_fmt(s)}\t{_fmt(p)}")
    _write_lines(out_dir / "correlations.tsv", corr_lines)

    if skipped:
        for item in skipped:
            click.echo(f"skipped: {item}", err=True)
        sys.exit(EXIT_PARTIAL)
    sys.exit(EXIT_OK)


@main.command()
@click.argument("n", type=int)
@click.argument("m_per_node", type=int)
@click.argument("output", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--seed", type=int, default=0, show_default=True)
def generate(n: int, m_per_node: int, output: Path, seed: int) -> None:
    """Write a scale-free edge list loadable with --format edgelist."""
    try:
        graph = generate_ba(n, m_per_node, seed)
    except GraphError as exc:
        _fail(str(exc))
    lines = [f"# scale-free edge list n={n} m_per_node={m_per_node} seed={seed}"]
    lines += [f"{u}\t{v}" for u, v in graph.edges()]
    output.parent.mkdir(parents=True, exist_ok=True)
    _write_lines(output, lines)
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
