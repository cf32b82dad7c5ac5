"""Turn user input into a :class:`Graph`."""

from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array

from .graph import Graph

__all__ = ["check_graph", "check_treewidth"]


def _from_matrix(x) -> Graph:
    a = check_array(x, ensure_2d=True, ensure_min_samples=0, ensure_min_features=0, dtype=None)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"adjacency matrix must be square, got shape {a.shape}")
    a = a != 0
    if not np.array_equal(a, a.T):
        raise ValueError("adjacency matrix must be symmetric")
    if a.diagonal().any():
        raise ValueError("adjacency matrix has self-loops")
    rows, cols = np.nonzero(np.triu(a, 1))
    return Graph(a.shape[0], zip(rows.tolist(), cols.tolist()))


def _from_networkx_like(x) -> Graph:
    nodes = sorted(x.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    edges = []
    for u, v in x.edges():
        if u == v:
            raise ValueError(f"self-loop at node {u!r}")
        edges.append((index[u], index[v]))
    return Graph(len(nodes), edges)


def check_graph(x) -> Graph:
    """Accept a Graph, a square 0/1 adjacency array or a networkx-style graph.

    Networkx nodes are relabelled ``0..n-1`` in sorted order.

    >>> check_graph([[0, 1], [1, 0]]).m
    1
    """
    if isinstance(x, Graph):
        return x
    if hasattr(x, "nodes") and hasattr(x, "edges"):
        if getattr(x, "is_directed", lambda: False)():
            raise ValueError("directed graphs are not supported")
        return _from_networkx_like(x)
    if isinstance(x, (str, bytes)):
        raise TypeError("pass a parsed graph, not text; see parse_graph")
    return _from_matrix(x)


def check_treewidth(t) -> int:
    if isinstance(t, bool) or not isinstance(t, (int, np.integer)):
        raise TypeError(f"treewidth must be an integer, got {t!r}")
    if t < 0:
        raise ValueError(f"treewidth must be non-negative, got {t}")
    return int(t)
