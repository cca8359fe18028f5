"""Immutable compact graph with dense integer node ids.

Adjacency is stored CSR-style (one offset array, one flat index array), so
neighbor iteration and degree lookup are O(1) per entry. Graphs and label
maps never mutate after construction and are safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np


class GraphError(ValueError):
    """Raised for invalid graph construction or node access."""


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _csr_from_arcs(n: int, src: np.ndarray, dst: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Pack (src, dst) arcs into CSR arrays with ascending columns per row."""
    order = np.lexsort((dst, src))
    indices = np.ascontiguousarray(dst[order])
    counts = np.bincount(src, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return _readonly(indptr), _readonly(indices)


@dataclass(frozen=True, eq=False)
class Graph:
    """Directed or undirected graph over node ids 0..n-1.

    Invariants: no self-loops, no duplicate entries in any adjacency list,
    lists sorted ascending. For undirected graphs each edge appears in both
    endpoint lists; ``in_indptr``/``in_indices`` are populated only for
    directed graphs.
    """

    directed: bool
    indptr: np.ndarray
    indices: np.ndarray
    in_indptr: np.ndarray | None = None
    in_indices: np.ndarray | None = None

    @classmethod
    def from_edge_ids(
        cls,
        node_count: int,
        pairs: Iterable[tuple[int, int]] | np.ndarray,
        directed: bool = False,
    ) -> "Graph":
        """Build a graph from integer id pairs.

        Self-loops are dropped and duplicate edges collapsed (an undirected
        pair counts as a duplicate regardless of endpoint order). An empty
        pair list is allowed: the result has ``node_count`` isolated nodes.
        """
        if node_count < 1:
            raise GraphError("graph needs at least one node")
        if not isinstance(pairs, (list, np.ndarray)):
            pairs = list(pairs)
        arr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        if arr.size and (arr.min() < 0 or arr.max() >= node_count):
            raise GraphError(f"edge endpoint out of range [0, {node_count})")

        u, v = arr[:, 0], arr[:, 1]
        loopless = u != v
        u, v = u[loopless], v[loopless]
        if not directed:
            u, v = np.minimum(u, v), np.maximum(u, v)
        # Encode each edge as a single int so duplicates collapse in one pass.
        keys = np.unique(u * np.int64(node_count) + v)
        u, v = keys // node_count, keys % node_count

        if directed:
            indptr, indices = _csr_from_arcs(node_count, u, v)
            in_indptr, in_indices = _csr_from_arcs(node_count, v, u)
            return cls(True, indptr, indices, in_indptr, in_indices)
        src = np.concatenate([u, v])
        dst = np.concatenate([v, u])
        indptr, indices = _csr_from_arcs(node_count, src, dst)
        return cls(False, indptr, indices)

    @property
    def node_count(self) -> int:
        return self.indptr.shape[0] - 1

    @property
    def edge_count(self) -> int:
        arcs = self.indices.shape[0]
        return arcs if self.directed else arcs // 2

    def _check_node(self, v: int) -> None:
        if not 0 <= v < self.node_count:
            raise GraphError(f"node id {v} out of range [0, {self.node_count})")

    def out_degree(self, v: int) -> int:
        """Out-degree for directed graphs; plain degree for undirected ones."""
        self._check_node(v)
        return int(self.indptr[v + 1] - self.indptr[v])

    def out_degrees(self) -> np.ndarray:
        """Vector of out-degrees for all nodes."""
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        """Successors of v (directed) or adjacent nodes (undirected), sorted."""
        self._check_node(v)
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def in_neighbors(self, v: int) -> np.ndarray:
        """Predecessors of v; for undirected graphs same as neighbors."""
        self._check_node(v)
        if not self.directed:
            return self.neighbors(v)
        assert self.in_indptr is not None and self.in_indices is not None
        return self.in_indices[self.in_indptr[v] : self.in_indptr[v + 1]]

    def arc_pairs(self) -> np.ndarray:
        """All stored arcs as an (arcs, 2) array of (src, dst) ids."""
        src = np.repeat(np.arange(self.node_count, dtype=np.int64), self.out_degrees())
        return np.stack([src, self.indices], axis=1)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Canonical edge list: every directed arc, or each undirected edge once (u < v)."""
        for u in range(self.node_count):
            for v in self.indices[self.indptr[u] : self.indptr[u + 1]]:
                if self.directed or u < int(v):
                    yield u, int(v)


@dataclass(frozen=True, eq=False)
class LabelMap:
    """Bijection between external string labels and dense node ids."""

    _id_to_label: tuple[str, ...]
    _label_to_id: dict[str, int]

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "LabelMap":
        id_to_label = tuple(labels)
        label_to_id = {label: i for i, label in enumerate(id_to_label)}
        if len(label_to_id) != len(id_to_label):
            raise GraphError("duplicate labels in label map")
        return cls(id_to_label, label_to_id)

    def id_of(self, label: str) -> int:
        try:
            return self._label_to_id[label]
        except KeyError:
            raise GraphError(f"unknown label {label!r}") from None

    def label_of(self, node: int) -> str:
        if not 0 <= node < len(self._id_to_label):
            raise GraphError(f"node id {node} out of range [0, {len(self._id_to_label)})")
        return self._id_to_label[node]

    @property
    def labels(self) -> tuple[str, ...]:
        return self._id_to_label

    def __contains__(self, label: str) -> bool:
        return label in self._label_to_id

    def __len__(self) -> int:
        return len(self._id_to_label)


def build_graph(
    edges: Iterable[tuple[str, str]], directed: bool = False
) -> tuple[Graph, LabelMap]:
    """Build a graph from labeled edges.

    Node ids are assigned in first-appearance order of labels, self-loops
    are dropped, and duplicate edges collapse to one. Raises ``GraphError``
    on an empty edge list or empty labels.
    """
    label_to_id: dict[str, int] = {}
    order: list[str] = []
    pairs: list[tuple[int, int]] = []
    for a, b in edges:
        if not a or not b:
            raise GraphError("node labels must be non-empty strings")
        for label in (a, b):
            if label not in label_to_id:
                label_to_id[label] = len(order)
                order.append(label)
        pairs.append((label_to_id[a], label_to_id[b]))
    if not pairs:
        raise GraphError("empty graph")
    graph = Graph.from_edge_ids(len(order), pairs, directed=directed)
    return graph, LabelMap.from_labels(order)
