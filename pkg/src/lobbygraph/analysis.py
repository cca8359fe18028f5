"""Dispersion series, envelope fits, rank correlation, ranking tables.

Also provides a deterministic preferential-attachment generator used by the
property and performance tests. All functions are pure over immutable
inputs and safe for concurrent invocation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

from .centrality import MEASURES, CentralityVector
from .graph import Graph, GraphError, LabelMap


class AnalysisError(ValueError):
    """Raised for undefined statistics or unusable fit regimes."""


@dataclass(frozen=True, eq=False)
class DispersionSeries:
    """Paired per-node points for two measures, log-log plottable."""

    x_measure: str
    y_measure: str
    x: np.ndarray
    y: np.ndarray
    nodes: np.ndarray

    def points(self) -> Iterator[tuple[float, float, int]]:
        for i in range(len(self.x)):
            yield float(self.x[i]), float(self.y[i]), int(self.nodes[i])

    def __len__(self) -> int:
        return len(self.x)


@dataclass(frozen=True)
class EnvelopeFit:
    """Power-law fit through per-bin maxima of a log-log scatter."""

    exponent: float
    intercept: float
    x_min: float
    bin_count: int
    r_squared: float
    excluded_points: int


@dataclass(frozen=True)
class RankRow:
    rank: int
    label: str
    lobby: int | None
    eigenvector: float | None
    degree: int | None
    betweenness: float | None


@dataclass(frozen=True)
class RankTable:
    """Top-k nodes joined across measures, ordered by one of them."""

    ordered_by: str
    rows: tuple[RankRow, ...]


def dispersion(a: CentralityVector, b: CentralityVector) -> DispersionSeries:
    """One (a[v], b[v]) point per node; both vectors must cover the same graph."""
    if len(a) != len(b):
        raise AnalysisError(
            f"length mismatch: {len(a)} vs {len(b)} values"
        )
    nodes = np.arange(len(a), dtype=np.int64)
    return DispersionSeries(
        x_measure=a.measure,
        y_measure=b.measure,
        x=np.asarray(a.values, dtype=np.float64),
        y=np.asarray(b.values, dtype=np.float64),
        nodes=nodes,
    )


def envelope_exponent(
    series: DispersionSeries, x_min: float, bins_per_decade: int = 8
) -> EnvelopeFit:
    """Upper-envelope power-law exponent of y against x for x >= x_min.

    Partitions the regime into logarithmic bins, takes the max y per
    non-empty bin, and least-squares fits log10(max y) against the log10
    bin centers. Points with y <= 0 are excluded (log undefined) and
    counted. Requires at least 3 non-empty bins.
    """
    if x_min <= 0:
        raise AnalysisError("x_min must be positive for a log-log fit")
    if bins_per_decade < 1:
        raise AnalysisError("bins_per_decade must be at least 1")
    x = np.asarray(series.x, dtype=np.float64)
    y = np.asarray(series.y, dtype=np.float64)
    in_regime = x >= x_min
    usable = in_regime & (y > 0)
    excluded = int(in_regime.sum() - usable.sum())
    xs = x[usable]
    ys = y[usable]
    if xs.size < 3:
        raise AnalysisError("insufficient regime data")

    log_x0 = np.log10(x_min)
    bin_idx = np.floor((np.log10(xs) - log_x0) * bins_per_decade).astype(np.int64)
    nbins = int(bin_idx.max()) + 1
    bin_idx = np.clip(bin_idx, 0, nbins - 1)
    bin_max = np.full(nbins, -np.inf)
    np.maximum.at(bin_max, bin_idx, np.log10(ys))
    filled = np.flatnonzero(bin_max > -np.inf)
    if filled.size < 3:
        raise AnalysisError("insufficient regime data")

    centers = log_x0 + (filled + 0.5) / bins_per_decade
    peaks = bin_max[filled]
    slope, intercept = np.polyfit(centers, peaks, 1)
    predicted = slope * centers + intercept
    ss_res = float(np.sum((peaks - predicted) ** 2))
    ss_tot = float(np.sum((peaks - peaks.mean()) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else max(0.0, 1.0 - ss_res / ss_tot)
    return EnvelopeFit(
        exponent=float(slope),
        intercept=float(intercept),
        x_min=float(x_min),
        bin_count=int(filled.size),
        r_squared=r_squared,
        excluded_points=excluded,
    )


def _values(vec: CentralityVector | np.ndarray) -> np.ndarray:
    if isinstance(vec, CentralityVector):
        return np.asarray(vec.values, dtype=np.float64)
    return np.asarray(vec, dtype=np.float64)


def _ranks(values: np.ndarray) -> np.ndarray:
    """Ranks 1..n with ties assigned the average rank of their run."""
    _, inverse, counts = np.unique(values, return_inverse=True, return_counts=True)
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    return starts[inverse] + (counts[inverse] - 1) / 2.0 + 1.0


def _check_corr_inputs(a: np.ndarray, b: np.ndarray) -> None:
    if len(a) != len(b):
        raise AnalysisError(f"length mismatch: {len(a)} vs {len(b)} values")
    if len(a) < 2:
        raise AnalysisError("correlation needs at least two values")
    if np.all(a == a[0]) or np.all(b == b[0]):
        raise AnalysisError("undefined correlation for a constant vector")


def spearman(
    a: CentralityVector | np.ndarray, b: CentralityVector | np.ndarray
) -> float:
    """Spearman rank correlation with average ranks for ties."""
    va, vb = _values(a), _values(b)
    _check_corr_inputs(va, vb)
    return float(np.corrcoef(_ranks(va), _ranks(vb))[0, 1])


def pearson(
    a: CentralityVector | np.ndarray, b: CentralityVector | np.ndarray
) -> float:
    """Pearson linear correlation, same contract as :func:`spearman`."""
    va, vb = _values(a), _values(b)
    _check_corr_inputs(va, vb)
    return float(np.corrcoef(va, vb)[0, 1])


def rank_table(
    labels: LabelMap,
    vectors: Mapping[str, CentralityVector | None],
    order_by: str,
    k: int,
) -> RankTable:
    """Top-k rows joining each node's label with all computed measures.

    Rows are ordered by ``order_by`` descending with ties broken by label
    ascending; ranks run 1..k. Measures absent from ``vectors`` appear as
    None. ``k`` larger than the node count returns all nodes.
    """
    if k < 1:
        raise AnalysisError("k must be at least 1")
    if order_by not in MEASURES:
        raise AnalysisError(f"unknown measure {order_by!r}")
    ordering = vectors.get(order_by)
    if ordering is None:
        raise AnalysisError(f"measure {order_by!r} not computed")
    n = len(labels)
    for name, vec in vectors.items():
        if vec is not None and len(vec) != n:
            raise AnalysisError(f"measure {name!r} has {len(vec)} values for {n} nodes")

    key = ordering.values
    order = sorted(range(n), key=lambda i: (-key[i], labels.label_of(i)))

    def integer(name: str, i: int) -> int | None:
        vec = vectors.get(name)
        return int(vec.values[i]) if vec is not None else None

    def real(name: str, i: int) -> float | None:
        vec = vectors.get(name)
        return float(vec.values[i]) if vec is not None else None

    rows = tuple(
        RankRow(
            rank=pos + 1,
            label=labels.label_of(i),
            lobby=integer("lobby", i),
            eigenvector=real("eigenvector", i),
            degree=integer("degree", i),
            betweenness=real("betweenness", i),
        )
        for pos, i in enumerate(order[: min(k, n)])
    )
    return RankTable(ordered_by=order_by, rows=rows)


def generate_ba(n: int, m_per_node: int, seed: int) -> Graph:
    """Undirected scale-free graph by preferential attachment.

    Growth starts from a complete seed of ``m_per_node`` nodes; each new
    node attaches to ``m_per_node`` distinct existing nodes picked with
    probability proportional to degree. Deterministic for a fixed seed.
    """
    if m_per_node < 1 or n <= m_per_node:
        raise GraphError("need n > m_per_node >= 1")
    rng = np.random.default_rng(seed)
    pairs: list[tuple[int, int]] = [
        (i, j) for i in range(m_per_node) for j in range(i + 1, m_per_node)
    ]
    # One entry per unit of degree, so uniform draws realize degree weighting.
    repeated: list[int] = [node for pair in pairs for node in pair]
    for new in range(m_per_node, n):
        if repeated:
            targets: set[int] = set()
            while len(targets) < m_per_node:
                targets.add(repeated[int(rng.integers(len(repeated)))])
        else:
            targets = set(range(m_per_node))
        for t in sorted(targets):
            pairs.append((new, t))
            repeated.append(new)
            repeated.append(t)
    return Graph.from_edge_ids(n, pairs, directed=False)
