"""Maximum bipartite matching (Hopcroft-Karp)."""

from __future__ import annotations

from collections import deque
from typing import Hashable, Mapping, Sequence

__all__ = ["maximum_bipartite_matching"]

_INF = float("inf")


def maximum_bipartite_matching(
    graph: Mapping[Hashable, Sequence[Hashable]] | Sequence[Sequence[Hashable]],
) -> tuple[int, dict]:
    """Return the size of a maximum matching and the matched ``left -> right`` pairs.

    ``graph`` maps each left vertex to its right neighbours (a list of lists
    uses the indices as left vertices).  The result depends only on the
    iteration order of the input.

    >>> maximum_bipartite_matching({"x1": ["y1"], "x2": ["y1"]})[0]
    1
    """
    if not isinstance(graph, Mapping):
        graph = dict(enumerate(graph))
    left = list(graph)
    pair_left: dict = {}
    pair_right: dict = {}
    dist: dict = {}

    def bfs() -> bool:
        queue = deque()
        for u in left:
            if u in pair_left:
                dist[u] = _INF
            else:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for v in graph[u]:
                w = pair_right.get(v)
                if w is None:
                    found = True
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u) -> bool:
        for v in graph[u]:
            w = pair_right.get(v)
            if w is None or (dist[w] == dist[u] + 1 and dfs(w)):
                pair_left[u] = v
                pair_right[v] = u
                return True
        dist[u] = _INF
        return False

    size = 0
    while bfs():
        for u in left:
            if u not in pair_left and dfs(u):
                size += 1
    return size, {u: pair_left[u] for u in left if u in pair_left}
