"""Graph fixtures shared by the test modules."""

from __future__ import annotations

import random
from functools import lru_cache

import networkx as nx

from triangulex import Graph


def from_nx(h) -> Graph:
    h = nx.convert_node_labels_to_integers(h, ordering="sorted")
    return Graph(h.number_of_nodes(), h.edges())


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a, b):
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen():
    return from_nx(nx.petersen_graph())


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def fixtures(max_n: int = 10) -> list[tuple[str, Graph]]:
    """P_n, C_n, K_n and K_{a,b} up to ``max_n`` vertices plus Petersen."""
    out = []
    for n in range(1, max_n + 1):
        out.append((f"P{n}", path(n)))
        out.append((f"K{n}", complete(n)))
        if n >= 3:
            out.append((f"C{n}", cycle(n)))
    for a in range(1, max_n):
        for b in range(a, max_n - a + 1):
            out.append((f"K{a},{b}", complete_bipartite(a, b)))
    out.append(("petersen", petersen()))
    out.append(("empty5", Graph(5)))
    return out


@lru_cache(maxsize=None)
def atlas(max_n: int = 7) -> tuple[Graph, ...]:
    """Every graph on at most ``max_n`` vertices up to isomorphism (n <= 7)."""
    return tuple(from_nx(h) for h in nx.graph_atlas_g() if 0 < h.number_of_nodes() <= max_n)


def random_suite(seed: int, count: int, lo: int, hi: int) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(lo, hi)
        out.append(random_graph(rng, n, rng.choice([0.15, 0.25, 0.35, 0.5, 0.65, 0.8])))
    return out


def random_tree(rng: random.Random, n: int) -> Graph:
    return Graph(n, [(i, rng.randrange(i)) for i in range(1, n)])
