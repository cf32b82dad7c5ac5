"""Bit-set graphs, vertex sets, connectivity, chordality and graph file formats.

Vertex sets are stored as Python integers used as bit masks: bit ``v`` is set
when vertex ``v`` belongs to the set.  :class:`VertexSet` wraps such a mask
together with the width of the universe it lives in and is the type handed
out by the public API.  Algorithms work on the raw masks internally.
"""

from __future__ import annotations

import io
import os
import re
from typing import IO, Iterable, Iterator, Union

__all__ = [
    "VertexSet",
    "Graph",
    "GraphFormatError",
    "iter_bits",
    "bits_of",
    "neighborhood",
    "connected_components",
    "is_clique",
    "is_chordal",
    "maximum_cardinality_search",
    "perfect_elimination_order",
    "chordal_maximal_cliques",
    "parse_graph",
    "read_graph",
    "serialize_graph",
]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class VertexSet:
    """Immutable fixed-width set of vertices ``0..n-1`` backed by a bit mask.

    Set algebra between two vertex sets of different widths is a programming
    error and trips an assertion.
    """

    __slots__ = ("n", "bits")

    def __init__(self, n: int, members: Iterable[int] = ()):
        bits = bits_of(members)
        if bits >> n:
            raise ValueError(f"vertex index out of range for width {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_bits(cls, n: int, bits: int) -> "VertexSet":
        assert bits >= 0 and bits >> n == 0, f"mask exceeds width {n}"
        obj = cls.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "bits", bits)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("VertexSet is immutable")

    def __reduce__(self):
        return (VertexSet.from_bits, (self.n, self.bits))

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and 0 <= v < self.n and bool(self.bits >> v & 1)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VertexSet):
            return NotImplemented
        return self.n == other.n and self.bits == other.bits

    def _check(self, other: "VertexSet") -> None:
        assert isinstance(other, VertexSet), "expected a VertexSet"
        assert self.n == other.n, f"width mismatch: {self.n} != {other.n}"

    def __and__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet.from_bits(self.n, self.bits & other.bits)

    def __or__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet.from_bits(self.n, self.bits | other.bits)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet.from_bits(self.n, self.bits & ~other.bits)

    def __xor__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet.from_bits(self.n, self.bits ^ other.bits)

    def __le__(self, other: "VertexSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "VertexSet") -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: "VertexSet") -> bool:
        return other <= self

    def __gt__(self, other: "VertexSet") -> bool:
        return other < self

    def issubset(self, other: "VertexSet") -> bool:
        return self <= other

    def isdisjoint(self, other: "VertexSet") -> bool:
        self._check(other)
        return self.bits & other.bits == 0

    def sorted(self) -> list[int]:
        return list(iter_bits(self.bits))

    def sort_key(self) -> tuple[int, ...]:
        """Key giving the lexicographic order on ascending member lists."""
        return tuple(iter_bits(self.bits))

    def __repr__(self) -> str:
        return f"VertexSet({self.sorted()})"


VertexLike = Union[VertexSet, Iterable[int]]


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the neighbourhood of ``v`` as a bit mask.

    >>> g = Graph(3, [(0, 1), (1, 2)])
    >>> g.m, g.has_edge(0, 2)
    (2, False)
    """

    __slots__ = ("n", "adj", "m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._freeze(n, adj)

    def _freeze(self, n: int, adj: list[int]) -> None:
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(adj))
        object.__setattr__(self, "m", sum(a.bit_count() for a in adj) // 2)

    @classmethod
    def from_adjacency(cls, adj: Iterable[int]) -> "Graph":
        """Build a graph from neighbourhood masks; symmetry is checked."""
        adj = list(adj)
        n = len(adj)
        for v, a in enumerate(adj):
            assert a >> n == 0 and not a >> v & 1, "invalid adjacency mask"
            for u in iter_bits(a):
                assert adj[u] >> v & 1, "adjacency must be symmetric"
        obj = cls.__new__(cls)
        obj._freeze(n, adj)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __reduce__(self):
        return (Graph.from_adjacency, (self.adj,))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @property
    def full(self) -> int:
        """Mask of all vertices."""
        return (1 << self.n) - 1

    def vertices(self) -> VertexSet:
        return VertexSet.from_bits(self.n, self.full)

    def vset(self, members: VertexLike) -> VertexSet:
        """Coerce ``members`` to a :class:`VertexSet` of this graph's width."""
        if isinstance(members, VertexSet):
            assert members.n == self.n, f"width mismatch: {members.n} != {self.n}"
            return members
        return VertexSet(self.n, members)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in iter_bits(self.adj[u] >> (u + 1)):
                yield u, u + 1 + v

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> VertexSet:
        return VertexSet.from_bits(self.n, self.adj[v])

    # mask-level primitives used by the algorithms

    def nbr(self, mask: int) -> int:
        """Open neighbourhood of a vertex mask."""
        out = 0
        adj = self.adj
        m = mask
        while m:
            low = m & -m
            out |= adj[low.bit_length() - 1]
            m ^= low
        return out & ~mask

    def closed_nbr(self, mask: int) -> int:
        return self.nbr(mask) | mask

    def components(self, domain: int) -> list[int]:
        """Connected components of ``G[domain]`` ordered by minimum vertex."""
        adj = self.adj
        comps = []
        rest = domain
        while rest:
            comp = frontier = rest & -rest
            while frontier:
                reach = 0
                while frontier:
                    low = frontier & -frontier
                    reach |= adj[low.bit_length() - 1]
                    frontier ^= low
                frontier = reach & rest & ~comp
                comp |= frontier
            rest &= ~comp
            comps.append(comp)
        return comps

    def component_of(self, v: int, domain: int) -> int:
        """Component of ``G[domain]`` containing ``v``."""
        adj = self.adj
        comp = frontier = 1 << v
        while frontier:
            reach = 0
            while frontier:
                low = frontier & -frontier
                reach |= adj[low.bit_length() - 1]
                frontier ^= low
            frontier = reach & domain & ~comp
            comp |= frontier
        return comp

    def is_connected_mask(self, mask: int) -> bool:
        if not mask:
            return True
        return self.component_of((mask & -mask).bit_length() - 1, mask) == mask

    def is_clique_mask(self, mask: int) -> bool:
        adj = self.adj
        for v in iter_bits(mask):
            if mask & ~adj[v] & ~(1 << v):
                return False
        return True

    def induced_subgraph(self, vertices: VertexLike) -> tuple["Graph", list[int]]:
        """Return ``G[vertices]`` relabelled to ``0..k-1`` and the old labels."""
        mask = vertices.bits if isinstance(vertices, VertexSet) else bits_of(vertices)
        labels = list(iter_bits(mask))
        index = {v: i for i, v in enumerate(labels)}
        adj = [bits_of(index[u] for u in iter_bits(self.adj[v] & mask)) for v in labels]
        return Graph.from_adjacency(adj), labels

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Return a new graph with ``edges`` added."""
        return Graph(self.n, list(self.edges()) + list(edges))

    def complement(self) -> "Graph":
        full = self.full
        return Graph.from_adjacency([full & ~a & ~(1 << v) for v, a in enumerate(self.adj)])


def neighborhood(g: Graph, s: VertexLike) -> VertexSet:
    """``N(S)``: vertices outside ``S`` adjacent to some vertex of ``S``."""
    s = g.vset(s)
    return VertexSet.from_bits(g.n, g.nbr(s.bits))


def connected_components(g: Graph, domain: VertexLike) -> list[VertexSet]:
    """Components of ``g[domain]`` in ascending order of their minimum vertex."""
    domain = g.vset(domain)
    return [VertexSet.from_bits(g.n, c) for c in g.components(domain.bits)]


def is_clique(g: Graph, s: VertexLike) -> bool:
    return g.is_clique_mask(g.vset(s).bits)


def maximum_cardinality_search(g: Graph) -> list[int]:
    """Visit order of maximum cardinality search, ties to the smallest vertex."""
    weight = [0] * g.n
    unvisited = g.full
    order = []
    for _ in range(g.n):
        best = -1
        for v in iter_bits(unvisited):
            if best < 0 or weight[v] > weight[best]:
                best = v
        order.append(best)
        unvisited &= ~(1 << best)
        for u in iter_bits(g.adj[best] & unvisited):
            weight[u] += 1
    return order


def perfect_elimination_order(g: Graph) -> list[int] | None:
    """A perfect elimination order of ``g``, or ``None`` if it is not chordal.

    The candidate order is the reverse of a maximum cardinality search; it is
    perfect exactly when ``g`` is chordal.  Each vertex's later neighbours
    minus its earliest-eliminated later neighbour ``p`` must be adjacent to
    ``p``.
    """
    peo = maximum_cardinality_search(g)[::-1]
    position = [0] * g.n
    for i, v in enumerate(peo):
        position[v] = i
    later = [0] * g.n
    for i, v in enumerate(peo):
        for u in iter_bits(g.adj[v]):
            if position[u] > i:
                later[v] |= 1 << u
    for v in peo:
        if not later[v]:
            continue
        parent = min(iter_bits(later[v]), key=position.__getitem__)
        rest = later[v] & ~(1 << parent)
        if rest & ~g.adj[parent]:
            return None
    return peo


def is_chordal(g: Graph) -> bool:
    return perfect_elimination_order(g) is not None


def chordal_maximal_cliques(g: Graph) -> list[VertexSet]:
    """Maximal cliques of a chordal graph, sorted lexicographically.

    Raises ``ValueError`` when ``g`` is not chordal.
    """
    peo = perfect_elimination_order(g)
    if peo is None:
        raise ValueError("graph is not chordal")
    position = {v: i for i, v in enumerate(peo)}
    candidates = set()
    for v in peo:
        later = bits_of(u for u in iter_bits(g.adj[v]) if position[u] > position[v])
        candidates.add(later | 1 << v)
    maximal = [c for c in candidates if not any(c != d and c & ~d == 0 for d in candidates)]
    return sorted((VertexSet.from_bits(g.n, c) for c in maximal), key=VertexSet.sort_key)


class GraphFormatError(ValueError):
    """Malformed graph input; ``line`` is the 1-based offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _as_text(source: Union[bytes, str, IO]) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def _detect_format(text: str) -> str:
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith(("c", "#")):
            continue
        return "dimacs" if line.startswith("p") else "edgelist"
    return "edgelist"


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"expected an integer, got {token!r}", lineno) from None


def _parse_dimacs(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise GraphFormatError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise GraphFormatError("malformed header, expected 'p edge <n> <m>'", lineno)
            n = _parse_int(parts[2], lineno)
            m = _parse_int(parts[3], lineno)
            if n < 0 or m < 0:
                raise GraphFormatError("malformed header, negative count", lineno)
        elif tag == "e":
            if n is None:
                raise GraphFormatError("edge line before 'p edge' header", lineno)
            if len(parts) != 3:
                raise GraphFormatError("malformed edge line, expected 'e <u> <v>'", lineno)
            u, v = _parse_int(parts[1], lineno), _parse_int(parts[2], lineno)
            for x in (u, v):
                if not 1 <= x <= n:
                    raise GraphFormatError(f"vertex {x} out of range 1..{n}", lineno)
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}", lineno)
            edges.append((u - 1, v - 1))
        else:
            raise GraphFormatError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise GraphFormatError("missing 'p edge <n> <m>' header")
    return Graph(n, edges)


_VERTEX_COUNT = re.compile(r"#\s*n\s*=\s*(\d+)\s*$")


def _parse_edgelist(text: str) -> Graph:
    """0-indexed ``u v`` lines; a ``# n=<count>`` comment keeps isolated vertices."""
    edges = []
    n = 0
    declared = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        found = _VERTEX_COUNT.match(raw.strip())
        if found:
            declared = int(found.group(1))
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError("expected '<u> <v>'", lineno)
        u, v = _parse_int(parts[0], lineno), _parse_int(parts[1], lineno)
        if u < 0 or v < 0:
            raise GraphFormatError("negative vertex index", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        if declared is not None and max(u, v) >= declared:
            raise GraphFormatError(f"vertex {max(u, v)} out of range 0..{declared - 1}", lineno)
        edges.append((u, v))
        n = max(n, u + 1, v + 1)
    return Graph(n if declared is None else declared, edges)


def parse_graph(source: Union[bytes, str, IO], format: str = "auto") -> Graph:
    """Parse a graph from DIMACS (``p edge``) or 0-indexed edge-list text.

    ``format`` is ``"dimacs"``, ``"edgelist"`` or ``"auto"`` (DIMACS when the
    first meaningful line is a ``p`` line).  Duplicate edges collapse;
    self-loops, out-of-range vertices and malformed lines raise
    :class:`GraphFormatError` naming the line.

    >>> parse_graph("p edge 3 2\\ne 1 2\\ne 2 3").m
    2
    """
    text = _as_text(source)
    if format == "auto":
        format = _detect_format(text)
    if format == "dimacs":
        return _parse_dimacs(text)
    if format == "edgelist":
        return _parse_edgelist(text)
    raise ValueError(f"unknown graph format {format!r}")


def read_graph(path: Union[str, os.PathLike], format: str = "auto") -> Graph:
    with open(path, "rb") as fh:
        return parse_graph(fh.read(), format)


def serialize_graph(g: Graph, format: str = "dimacs") -> str:
    out = io.StringIO()
    if format == "dimacs":
        out.write(f"p edge {g.n} {g.m}\n")
        for u, v in g.edges():
            out.write(f"e {u + 1} {v + 1}\n")
    elif format == "edgelist":
        out.write(f"# n={g.n}\n")
        for u, v in g.edges():
            out.write(f"{u} {v}\n")
    else:
        raise ValueError(f"unknown graph format {format!r}")
    return out.getvalue()
