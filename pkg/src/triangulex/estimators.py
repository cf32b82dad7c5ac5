"""Scikit-learn style wrappers around the solvers.

A "sample" here is a whole graph, so ``fit`` takes one graph (a
:class:`Graph`, a square adjacency array or a networkx graph) and stores
what was found on it in trailing-underscore attributes.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .artifacts import HostArtifacts
from .dp import max_induced_tw
from .iso import solve_induced_iso
from .validation import check_graph, check_treewidth

__all__ = ["PMCEnumerator", "MaxInducedTreewidthSubgraph", "InducedSubgraphMatcher"]


def _adjacency_matrix(g) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int8)
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1
    return a


class PMCEnumerator(TransformerMixin, BaseEstimator):
    """Minimal separators, potential maximal cliques and good triples of a graph.

    ``transform`` returns the PMC incidence matrix (one row per PMC).
    """

    def __init__(self, threads=1):
        self.threads = threads

    def fit(self, X, y=None):
        g = check_graph(X)
        self.artifacts_ = HostArtifacts.build(g, threads=self.threads)
        self.separators_ = [s.sorted() for s in self.artifacts_.separators]
        self.pmcs_ = [p.omega.sorted() for p in self.artifacts_.pmcs]
        self.n_vertices_ = g.n
        return self

    def transform(self, X):
        check_is_fitted(self, "artifacts_")
        if X is not None and check_graph(X) != self.artifacts_.graph:
            raise ValueError("transform expects the graph seen in fit")
        out = np.zeros((len(self.pmcs_), self.n_vertices_), dtype=bool)
        for i, members in enumerate(self.pmcs_):
            out[i, members] = True
        return out


class MaxInducedTreewidthSubgraph(TransformerMixin, BaseEstimator):
    """Largest vertex set inducing a subgraph of treewidth at most ``treewidth``.

    ``treewidth=0`` gives a maximum independent set, ``treewidth=1`` a
    maximum induced forest.  ``transform`` returns the adjacency matrix of
    the induced subgraph on the support (``X=None`` means the fitted graph).
    """

    def __init__(self, treewidth=1, certify=False):
        self.treewidth = treewidth
        self.certify = certify

    def fit(self, X, y=None):
        t = check_treewidth(self.treewidth)
        g = check_graph(X)
        res = max_induced_tw(g, t, certify=self.certify)
        self.graph_ = g
        self.ell_max_ = res.ell_max
        self.support_ = np.zeros(g.n, dtype=bool)
        self.support_[res.witness.sorted()] = True
        self.profile_ = np.array(res.profile, dtype=bool)
        self.decomposition_ = res.decomposition
        self.counts_ = res.counts
        return self

    def get_support(self, indices=False):
        check_is_fitted(self, "support_")
        return np.flatnonzero(self.support_) if indices else self.support_.copy()

    def transform(self, X):
        check_is_fitted(self, "support_")
        g = self.graph_ if X is None else check_graph(X)
        if g.n != self.support_.size:
            raise ValueError(f"graph has {g.n} vertices, fitted on {self.support_.size}")
        keep = np.flatnonzero(self.support_)
        return _adjacency_matrix(g)[np.ix_(keep, keep)]


class InducedSubgraphMatcher(BaseEstimator):
    """Looks for an induced copy of ``pattern`` in host graphs.

    ``treewidth=None`` uses the exact treewidth of the pattern.  ``fit``
    searches one host; ``predict`` answers yes/no for a list of hosts.
    """

    def __init__(self, pattern=None, treewidth=None):
        self.pattern = pattern
        self.treewidth = treewidth

    def _pattern(self):
        if self.pattern is None:
            raise ValueError("pattern is required")
        return check_graph(self.pattern)

    def _t(self):
        return None if self.treewidth is None else check_treewidth(self.treewidth)

    def fit(self, X, y=None):
        self.embedding_ = solve_induced_iso(check_graph(X), self._pattern(), self._t())
        self.found_ = self.embedding_ is not None
        return self

    def predict(self, X):
        f, t = self._pattern(), self._t()
        return np.array([solve_induced_iso(check_graph(h), f, t) is not None for h in X], dtype=bool)
