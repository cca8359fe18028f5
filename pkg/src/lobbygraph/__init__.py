"""Centrality measures and ranking analysis for large sparse graphs.

The lobby index of a node is the largest k such that at least k of its
neighbors have degree at least k (the graph analog of the h-index). This
package computes it alongside degree, betweenness, and eigenvector
centrality, and provides the dispersion / envelope-fit / rank-correlation
machinery to compare the measures on real corpora.
"""

from .analysis import (
    AnalysisError,
    DispersionSeries,
    EnvelopeFit,
    RankRow,
    RankTable,
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
from .graph import Graph, GraphError, LabelMap, build_graph
from .ingest import (
    IngestReport,
    ParseError,
    ThesaurusRecord,
    moby_to_graph,
    parse_biogrid,
    parse_edge_list,
    parse_moby,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisError",
    "CentralityError",
    "CentralityVector",
    "DispersionSeries",
    "EnvelopeFit",
    "Graph",
    "GraphError",
    "IngestReport",
    "LabelMap",
    "MEASURES",
    "ParseError",
    "RankRow",
    "RankTable",
    "ThesaurusRecord",
    "betweenness",
    "build_graph",
    "degree_centrality",
    "dispersion",
    "eigenvector_centrality",
    "envelope_exponent",
    "generate_ba",
    "lobby_index",
    "moby_to_graph",
    "parse_biogrid",
    "parse_edge_list",
    "parse_moby",
    "pearson",
    "rank_table",
    "spearman",
]
