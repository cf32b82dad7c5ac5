"""Exact graph algorithms built on minimal separators and potential maximal cliques."""

from .artifacts import HostArtifacts
from .dp import MaxInducedResult, TreeDecomposition, max_induced_tw, solve_max_induced_tw
from .estimators import InducedSubgraphMatcher, MaxInducedTreewidthSubgraph, PMCEnumerator
from .graph import (
    Graph,
    GraphFormatError,
    VertexSet,
    chordal_maximal_cliques,
    connected_components,
    is_chordal,
    is_clique,
    maximum_cardinality_search,
    neighborhood,
    parse_graph,
    perfect_elimination_order,
    read_graph,
    serialize_graph,
)
from .iso import PatternTreewidthError, pattern_treewidth, solve_induced_iso, triangulate_pattern
from .matching import maximum_bipartite_matching
from .minsep import Block, all_full_blocks, enumerate_minimal_separators, is_minimal_separator
from .pmc import GoodTriple, PmcRecord, enumerate_pmcs, good_triples, is_pmc

__version__ = "0.1.0"

__all__ = [
    "Block",
    "GoodTriple",
    "Graph",
    "GraphFormatError",
    "HostArtifacts",
    "InducedSubgraphMatcher",
    "MaxInducedResult",
    "MaxInducedTreewidthSubgraph",
    "PMCEnumerator",
    "PatternTreewidthError",
    "PmcRecord",
    "TreeDecomposition",
    "VertexSet",
    "all_full_blocks",
    "chordal_maximal_cliques",
    "connected_components",
    "enumerate_minimal_separators",
    "enumerate_pmcs",
    "good_triples",
    "is_chordal",
    "is_clique",
    "is_minimal_separator",
    "is_pmc",
    "max_induced_tw",
    "maximum_bipartite_matching",
    "maximum_cardinality_search",
    "neighborhood",
    "parse_graph",
    "pattern_treewidth",
    "perfect_elimination_order",
    "read_graph",
    "serialize_graph",
    "solve_induced_iso",
    "solve_max_induced_tw",
    "triangulate_pattern",
]
