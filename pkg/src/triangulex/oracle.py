"""Deliberately naive reference implementations.

Everything here works on plain Python sets built from the edge list and
sweeps subsets, orderings or bijections exhaustively.  The routines are used
to test the fast algorithms and to certify witnesses at run time, so they
share no code with them beyond :class:`~triangulex.graph.Graph` itself.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations, permutations

from .graph import Graph, VertexSet

__all__ = [
    "OracleBudget",
    "BudgetExceeded",
    "default_budget",
    "brute_treewidth",
    "treewidth_at_most",
    "brute_max_induced_tw",
    "brute_max_independent_set",
    "brute_max_induced_forest",
    "brute_pmcs",
    "pmcs_by_triangulations",
    "brute_minimal_separators",
    "brute_induced_iso",
    "brute_is_chordal",
    "is_induced_embedding",
]

BUDGET_ENV = "TRIANGULEX_BUDGET_N"


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    """Caps checked before any exponential sweep starts."""

    max_n_subsets: int = 16
    max_n_treewidth: int = 20

    def check_subsets(self, n: int) -> None:
        if n > self.max_n_subsets:
            raise BudgetExceeded(f"n={n} exceeds subset-sweep budget {self.max_n_subsets}")

    def check_treewidth(self, n: int) -> None:
        if n > self.max_n_treewidth:
            raise BudgetExceeded(f"n={n} exceeds treewidth budget {self.max_n_treewidth}")


def default_budget(budget_n: int | None = None) -> OracleBudget:
    """Budget from an explicit cap, else ``$TRIANGULEX_BUDGET_N``, else defaults."""
    if budget_n is None:
        env = os.environ.get(BUDGET_ENV)
        if env:
            budget_n = int(env)
    if budget_n is None:
        return OracleBudget()
    return OracleBudget(max_n_subsets=budget_n, max_n_treewidth=budget_n)


def _adjacency(g: Graph) -> dict[int, set[int]]:
    adj = {v: set() for v in range(g.n)}
    for u, v in g.edges():
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _components(adj: dict[int, set[int]], domain: set[int]) -> list[set[int]]:
    seen: set[int] = set()
    comps = []
    for start in sorted(domain):
        if start in seen:
            continue
        comp = {start}
        todo = [start]
        while todo:
            v = todo.pop()
            for u in adj[v]:
                if u in domain and u not in comp:
                    comp.add(u)
                    todo.append(u)
        seen |= comp
        comps.append(comp)
    return comps


def _nbr(adj: dict[int, set[int]], s: set[int]) -> set[int]:
    out = set()
    for v in s:
        out |= adj[v]
    return out - s


# treewidth


def _tw_at_most(adj: dict[int, set[int]], vertices: frozenset[int], k: int) -> bool:
    """Is there an elimination order of ``vertices`` with every degree <= k?

    The degree of ``v`` eliminated after the set ``S`` is the number of
    vertices outside ``S + v`` reachable from ``v`` through ``S``.
    """
    if len(vertices) <= k + 1:
        return True
    failed: set[frozenset[int]] = set()

    def q_size(eliminated: frozenset[int], v: int) -> int:
        reach = {v}
        todo = [v]
        frontier = set()
        while todo:
            x = todo.pop()
            for y in adj[x]:
                if y not in vertices or y in reach:
                    continue
                if y in eliminated:
                    reach.add(y)
                    todo.append(y)
                else:
                    frontier.add(y)
        return len(frontier)

    def search(eliminated: frozenset[int]) -> bool:
        if len(vertices) - len(eliminated) <= k + 1:
            return True
        if eliminated in failed:
            return False
        for v in sorted(vertices - eliminated):
            if q_size(eliminated, v) <= k and search(eliminated | {v}):
                return True
        failed.add(eliminated)
        return False

    return search(frozenset())


def treewidth_at_most(g: Graph, k: int, vertices=None, budget: OracleBudget | None = None) -> bool:
    """Decide ``tw(G[vertices]) <= k`` by searching elimination orders."""
    vs = frozenset(range(g.n) if vertices is None else vertices)
    (budget or default_budget()).check_treewidth(len(vs))
    if k < 0:
        return not vs
    return _tw_at_most(_adjacency(g), vs, k)


def brute_treewidth(g: Graph, budget: OracleBudget | None = None) -> int:
    """Exact treewidth; the empty graph has treewidth 0."""
    (budget or default_budget()).check_treewidth(g.n)
    adj = _adjacency(g)
    vs = frozenset(range(g.n))
    k = 0
    while not _tw_at_most(adj, vs, k):
        k += 1
    return k


def _induced_edge_count(adj, xs) -> int:
    return sum(len(adj[v] & xs) for v in xs) // 2


def brute_max_induced_tw(g: Graph, t: int, budget: OracleBudget | None = None) -> tuple[int, VertexSet]:
    """Largest vertex set inducing treewidth <= t, sweeping sizes downwards.

    Sets whose edge count exceeds ``t*k - t(t+1)/2`` (the most a treewidth-t
    graph on ``k >= t+1`` vertices can carry) are skipped unchecked.
    """
    budget = budget or default_budget()
    budget.check_subsets(g.n)
    adj = _adjacency(g)
    for size in range(g.n, 0, -1):
        limit = t * size - t * (t + 1) // 2 if size > t else None
        for xs in combinations(range(g.n), size):
            xset = frozenset(xs)
            if limit is not None and _induced_edge_count(adj, xset) > limit:
                continue
            if _tw_at_most(adj, xset, t):
                return size, VertexSet(g.n, xs)
    return 0, VertexSet(g.n)


def brute_max_independent_set(g: Graph, budget: OracleBudget | None = None) -> tuple[int, VertexSet]:
    (budget or default_budget()).check_subsets(g.n)
    adj = _adjacency(g)
    for size in range(g.n, 0, -1):
        for xs in combinations(range(g.n), size):
            if all(not (adj[v] & set(xs)) for v in xs):
                return size, VertexSet(g.n, xs)
    return 0, VertexSet(g.n)


def brute_max_induced_forest(g: Graph, budget: OracleBudget | None = None) -> tuple[int, VertexSet]:
    """Largest acyclic induced subgraph: edges == vertices - components."""
    (budget or default_budget()).check_subsets(g.n)
    adj = _adjacency(g)
    for size in range(g.n, 0, -1):
        for xs in combinations(range(g.n), size):
            xset = set(xs)
            if _induced_edge_count(adj, xset) == size - len(_components(adj, xset)):
                return size, VertexSet(g.n, xs)
    return 0, VertexSet(g.n)


# potential maximal cliques and minimal separators


def _passes_pmc_conditions(adj, n: int, k: set[int]) -> bool:
    outside = set(range(n)) - k
    seps = []
    for comp in _components(adj, outside):
        s = _nbr(adj, comp)
        if s == k:
            return False
        seps.append(s)
    completed = {v: set(adj[v] & k) for v in k}
    for s in seps:
        for v in s:
            completed[v] |= s - {v}
    return all(completed[v] == k - {v} for v in k)


def brute_pmcs(g: Graph, budget: OracleBudget | None = None) -> set[VertexSet]:
    """Every non-empty vertex set passing the two PMC conditions."""
    (budget or default_budget()).check_subsets(g.n)
    adj = _adjacency(g)
    found = set()
    for size in range(1, g.n + 1):
        for ks in combinations(range(g.n), size):
            if _passes_pmc_conditions(adj, g.n, set(ks)):
                found.add(VertexSet(g.n, ks))
    return found


def _fill_graph(adj, order) -> dict[int, set[int]]:
    filled = {v: set(nb) for v, nb in adj.items()}
    gone: set[int] = set()
    for v in order:
        later = filled[v] - gone
        for a in later:
            filled[a] |= later - {a}
        gone.add(v)
    return filled


def _maximal_cliques_of_chordal(filled, order) -> set[frozenset[int]]:
    pos = {v: i for i, v in enumerate(order)}
    cands = {frozenset({v} | {u for u in filled[v] if pos[u] > pos[v]}) for v in order}
    return {c for c in cands if not any(c < d for d in cands)}


def pmcs_by_triangulations(g: Graph, max_n: int = 7) -> set[VertexSet]:
    """PMCs straight from the definition: maximal cliques of minimal triangulations.

    Every minimal triangulation is the fill graph of some elimination order,
    so all ``n!`` orders are tried and the inclusion-minimal fill graphs kept.
    """
    if g.n > max_n:
        raise BudgetExceeded(f"n={g.n} exceeds triangulation sweep cap {max_n}")
    adj = _adjacency(g)
    fills = {}
    for order in permutations(range(g.n)):
        filled = _fill_graph(adj, order)
        edges = frozenset((u, v) for u in filled for v in filled[u] if u < v)
        fills.setdefault(edges, order)
    minimal = [e for e in fills if not any(o < e for o in fills)]
    found = set()
    for edges in minimal:
        order = fills[edges]
        found |= _maximal_cliques_of_chordal(_fill_graph(adj, order), order)
    return {VertexSet(g.n, c) for c in found}


def _labels(adj, n: int, s: set[int]) -> dict[int, int]:
    """Component index of every vertex outside ``s``."""
    out = {}
    for i, comp in enumerate(_components(adj, set(range(n)) - s)):
        for v in comp:
            out[v] = i
    return out


def brute_minimal_separators(g: Graph, budget: OracleBudget | None = None) -> set[VertexSet]:
    """Non-empty sets that are inclusion-minimal u,v-separators for some pair.

    Separation is upward closed, so minimality only needs the single-vertex
    deletions to be checked.
    """
    (budget or default_budget()).check_subsets(g.n)
    adj = _adjacency(g)
    found = set()
    pairs = [(u, v) for u, v in combinations(range(g.n), 2) if v not in adj[u]]
    for size in range(1, g.n - 1):
        for ss in combinations(range(g.n), size):
            s = set(ss)
            here = _labels(adj, g.n, s)
            separated = [(u, v) for u, v in pairs if u in here and v in here and here[u] != here[v]]
            if not separated:
                continue
            smaller = [_labels(adj, g.n, s - {x}) for x in ss]
            if any(all(lab[u] == lab[v] for lab in smaller) for u, v in separated):
                found.add(VertexSet(g.n, ss))
    return found


# chordality and induced isomorphism


def brute_is_chordal(g: Graph) -> bool:
    """No induced cycle on four or more vertices."""
    adj = _adjacency(g)
    for size in range(4, g.n + 1):
        for xs in combinations(range(g.n), size):
            xset = set(xs)
            if all(len(adj[v] & xset) == 2 for v in xs) and len(_components(adj, xset)) == 1:
                return False
    return True


def is_induced_embedding(g: Graph, f: Graph, mapping: dict[int, int]) -> bool:
    """Check that ``mapping`` is injective and preserves edges and non-edges."""
    if sorted(mapping) != list(range(f.n)):
        return False
    image = list(mapping.values())
    if len(set(image)) != len(image) or any(not 0 <= x < g.n for x in image):
        return False
    for a, b in combinations(range(f.n), 2):
        if f.has_edge(a, b) != g.has_edge(mapping[a], mapping[b]):
            return False
    return True


def brute_induced_iso(
    g: Graph, f: Graph, *, prune: bool = True, budget: OracleBudget | None = None
) -> dict[int, int] | None:
    """Find an induced copy of ``f`` in ``g`` by trying every subset and bijection.

    With ``prune`` the subsets whose sorted degree sequence differs from the
    pattern's are skipped; results are the same either way.
    """
    (budget or default_budget()).check_subsets(g.n)
    if f.n > 7:
        raise BudgetExceeded(f"pattern size {f.n} exceeds 7")
    if f.n > g.n:
        return None
    fadj = _adjacency(f)
    gadj = _adjacency(g)
    fdeg = sorted(len(fadj[v]) for v in range(f.n))
    fedges = [(a, b) for a, b in combinations(range(f.n), 2)]
    for xs in combinations(range(g.n), f.n):
        if prune:
            xset = set(xs)
            if sorted(len(gadj[v] & xset) for v in xs) != fdeg:
                continue
        for image in permutations(xs):
            if all((b in fadj[a]) == (image[b] in gadj[image[a]]) for a, b in fedges):
                return dict(enumerate(image))
    return None
