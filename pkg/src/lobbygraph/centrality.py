"""Degree, lobby, betweenness, and eigenvector centrality.

All operations take an immutable :class:`~lobbygraph.graph.Graph`. The
betweenness kernel parallelizes by source node (each worker accumulates
into a private row, rows are summed in fixed order), so results are
deterministic for a fixed thread count and bit-identical single-threaded.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numba
import numpy as np
from numba import njit, prange

from .graph import Graph

logger = logging.getLogger(__name__)

MEASURES = ("degree", "lobby", "betweenness", "eigenvector")


class CentralityError(ValueError):
    """Raised when a measure is undefined for the given graph."""


@dataclass(frozen=True, eq=False)
class CentralityVector:
    """Per-node scores for one measure, indexed by node id.

    ``convention`` records the pair-counting convention for betweenness;
    ``eigenvalue`` and ``converged`` are populated by the eigenvector
    routine only.
    """

    measure: str
    values: np.ndarray
    normalization: str = "raw"
    convention: str | None = None
    eigenvalue: float | None = None
    converged: bool = True

    def __post_init__(self) -> None:
        if self.measure not in MEASURES:
            raise ValueError(f"unknown measure {self.measure!r}")
        if self.normalization not in ("raw", "max-one"):
            raise ValueError(f"unknown normalization {self.normalization!r}")
        self.values.setflags(write=False)

    def __len__(self) -> int:
        return len(self.values)


def degree_centrality(graph: Graph) -> CentralityVector:
    """Out-degree per node (plain degree for undirected graphs)."""
    return CentralityVector("degree", graph.out_degrees().astype(np.int64))


@njit(cache=True)
def _lobby_kernel(indptr, indices, degrees):  # pragma: no cover - jitted
    n = indptr.shape[0] - 1
    out = np.zeros(n, dtype=np.int64)
    for v in range(n):
        start = indptr[v]
        end = indptr[v + 1]
        d = end - start
        if d == 0:
            continue
        neighbor_deg = degrees[indices[start:end]]
        neighbor_deg.sort()
        best = 0
        for k in range(1, d + 1):
            if neighbor_deg[d - k] >= k:
                best = k
            else:
                break
        out[v] = best
    return out


def lobby_index(graph: Graph) -> CentralityVector:
    """Largest k such that at least k neighbors of the node have degree >= k.

    Directed graphs use out-neighbors and the neighbors' out-degrees. Each
    node costs O(D log D) for the descending neighbor-degree scan.
    """
    degrees = graph.out_degrees().astype(np.int64)
    values = _lobby_kernel(graph.indptr, graph.indices, degrees)
    return CentralityVector("lobby", values)


@njit(cache=True)
def _brandes_source(
    s, fwd_indptr, fwd_indices, pred_indptr, pred_indices, dist, sigma, delta, order, queue, bc
):  # pragma: no cover - jitted
    head = 0
    tail = 0
    queue[tail] = s
    tail += 1
    dist[s] = 0
    sigma[s] = 1.0
    count = 0
    while head < tail:
        v = queue[head]
        head += 1
        order[count] = v
        count += 1
        dv = dist[v]
        for ei in range(fwd_indptr[v], fwd_indptr[v + 1]):
            w = fwd_indices[ei]
            if dist[w] < 0:
                dist[w] = dv + 1
                queue[tail] = w
                tail += 1
            if dist[w] == dv + 1:
                sigma[w] += sigma[v]
    # Dependency accumulation in reverse BFS order; order[0] is the source.
    for i in range(count - 1, 0, -1):
        w = order[i]
        coeff = (1.0 + delta[w]) / sigma[w]
        dw = dist[w]
        for ei in range(pred_indptr[w], pred_indptr[w + 1]):
            v = pred_indices[ei]
            if dist[v] == dw - 1:
                delta[v] += sigma[v] * coeff
        bc[w] += delta[w]
    # Reset only the entries this source touched.
    for i in range(count):
        v = order[i]
        dist[v] = -1
        sigma[v] = 0.0
        delta[v] = 0.0


@njit(cache=True)
def _brandes_serial(fwd_indptr, fwd_indices, pred_indptr, pred_indices):  # pragma: no cover
    n = fwd_indptr.shape[0] - 1
    bc = np.zeros(n, dtype=np.float64)
    dist = np.full(n, -1, dtype=np.int64)
    sigma = np.zeros(n, dtype=np.float64)
    delta = np.zeros(n, dtype=np.float64)
    order = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for s in range(n):
        _brandes_source(
            s, fwd_indptr, fwd_indices, pred_indptr, pred_indices, dist, sigma, delta, order, queue, bc
        )
    return bc


@njit(parallel=True, cache=True)
def _brandes_parallel(fwd_indptr, fwd_indices, pred_indptr, pred_indices, nchunks):  # pragma: no cover
    n = fwd_indptr.shape[0] - 1
    parts = np.zeros((nchunks, n), dtype=np.float64)
    for c in prange(nchunks):
        dist = np.full(n, -1, dtype=np.int64)
        sigma = np.zeros(n, dtype=np.float64)
        delta = np.zeros(n, dtype=np.float64)
        order = np.empty(n, dtype=np.int64)
        queue = np.empty(n, dtype=np.int64)
        lo = c * n // nchunks
        hi = (c + 1) * n // nchunks
        for s in range(lo, hi):
            _brandes_source(
                s,
                fwd_indptr,
                fwd_indices,
                pred_indptr,
                pred_indices,
                dist,
                sigma,
                delta,
                order,
                queue,
                parts[c],
            )
    return parts


def betweenness(
    graph: Graph, threads: int | None = None, symmetrize: bool = False
) -> CentralityVector:
    """Unnormalized Brandes betweenness over unit-length geodesics.

    Undirected graphs sum over unordered node pairs (ordered accumulation
    halved); directed graphs sum over ordered pairs following out-links,
    unless ``symmetrize`` forces the undirected reading of the edges.
    Endpoints are excluded. ``threads=1`` selects the serial kernel.
    """
    run_directed = graph.directed and not symmetrize
    if run_directed:
        fwd_indptr, fwd_indices = graph.indptr, graph.indices
        assert graph.in_indptr is not None and graph.in_indices is not None
        pred_indptr, pred_indices = graph.in_indptr, graph.in_indices
    else:
        g = graph
        if graph.directed:
            g = Graph.from_edge_ids(graph.node_count, graph.arc_pairs(), directed=False)
        fwd_indptr, fwd_indices = g.indptr, g.indices
        pred_indptr, pred_indices = fwd_indptr, fwd_indices

    n = graph.node_count
    if threads is None:
        threads = numba.get_num_threads()
    threads = max(1, min(int(threads), numba.config.NUMBA_NUM_THREADS))

    if threads == 1 or n < 256:
        values = _brandes_serial(fwd_indptr, fwd_indices, pred_indptr, pred_indices)
    else:
        nchunks = min(threads * 4, n)
        old = numba.get_num_threads()
        numba.set_num_threads(threads)
        try:
            parts = _brandes_parallel(
                fwd_indptr, fwd_indices, pred_indptr, pred_indices, nchunks
            )
        finally:
            numba.set_num_threads(old)
        values = parts.sum(axis=0)

    if not run_directed:
        values *= 0.5
    convention = "ordered-pairs" if run_directed else "unordered-pairs"
    return CentralityVector("betweenness", values, convention=convention)


def eigenvector_centrality(
    graph: Graph,
    tol: float = 1e-10,
    max_iter: int = 10_000,
    reverse: bool = False,
) -> CentralityVector:
    """Dominant eigenvector of the adjacency matrix by power iteration.

    Starts from the uniform positive vector, renormalizes to unit max each
    sweep, and stops when the max-norm step falls below ``tol``. Scores flow
    along out-links for directed graphs; ``reverse`` iterates the transpose
    instead. Period-2 oscillation (bipartite structure) is damped by
    switching to averaged iterates once detected. A non-converged run is
    returned flagged (``converged=False``) with a warning, never silently.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    if graph.edge_count == 0:
        raise CentralityError("eigenvector undefined for a graph with no edges")

    if reverse and graph.directed:
        assert graph.in_indptr is not None and graph.in_indices is not None
        indptr, indices = graph.in_indptr, graph.in_indices
    else:
        indptr, indices = graph.indptr, graph.indices
    n = graph.node_count
    rows = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))

    def sweep(vec: np.ndarray) -> np.ndarray:
        return np.bincount(rows, weights=vec[indices], minlength=n)

    x = np.ones(n, dtype=np.float64)
    prev2: np.ndarray | None = None
    damped = False
    alpha = 0.0
    converged = False
    for _ in range(max_iter):
        y = sweep(x)
        if damped:
            y = 0.5 * (y + x)
        peak = float(y.max())
        if peak <= 0.0:
            # All mass drained away (acyclic directed flow); keep the last
            # normalized iterate and flag the run instead of dividing by zero.
            alpha = 0.0
            break
        x_new = y / peak
        alpha = 2.0 * peak - 1.0 if damped else peak
        if np.max(np.abs(x_new - x)) < tol:
            x = x_new
            converged = True
            break
        if not damped and prev2 is not None and np.max(np.abs(x_new - prev2)) < tol:
            damped = True
        prev2 = x
        x = x_new
    if not converged:
        logger.warning(
            "power iteration did not converge within %d sweeps (tol=%g)", max_iter, tol
        )
    return CentralityVector(
        "eigenvector", x, normalization="max-one", eigenvalue=alpha, converged=converged
    )
