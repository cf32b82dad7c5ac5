"""Induced subgraph isomorphism for patterns of bounded treewidth.

The pattern ``F`` is replaced by a minimal triangulation ``TF`` with cliques
of at most ``t+1`` vertices.  The host is walked through its full blocks and
good triples exactly as in the treewidth DP, but the state of a host block
``(S, C)`` is a *pattern piece*:

* ``Q`` - a clique of ``TF`` whose vertices are mapped onto ``W <= S`` by a
  bijection ``mu``;
* ``P`` - a union of components of ``TF - Q`` (with ``N_TF(P) <= Q``) that
  must be embedded into ``C``.

``alpha`` of a piece on a host block is the embedding of ``Q + P`` found (or
``None``).  For a good triple it extends ``mu`` onto new pattern vertices
placed in ``Omega - S``, splits the rest of the piece into components of
``TF`` and distributes them over the host components below ``Omega`` with a
bipartite matching.  When two pattern components must share one host
component the matching cannot see it, so a grouped assignment is tried next
(switch off with ``grouping=False``).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

from .artifacts import HostArtifacts
from .dp import small_subsets
from .graph import Graph, VertexSet, chordal_maximal_cliques, is_chordal, iter_bits
from .matching import maximum_bipartite_matching
from .minsep import Block, all_full_blocks, minimal_separator_masks
from .oracle import is_induced_embedding
from .pmc import GoodTriple, PmcRecord, good_triples, local_separator_masks

__all__ = [
    "PatternTreewidthError",
    "PatternDecomposition",
    "triangulate_pattern",
    "pattern_treewidth",
    "InducedIsoDP",
    "solve_induced_iso",
    "compute_iso_beta",
    "glue_iso_at_separators",
    "MAX_PATTERN_VERTICES",
]

logger = logging.getLogger(__name__)

MAX_PATTERN_VERTICES = 24


class PatternTreewidthError(ValueError):
    pass


# pattern side


def _elimination_order(f: Graph, k: int) -> list[int] | None:
    """An elimination order whose eliminated degrees never exceed ``k``."""
    full = f.full
    failed: set[int] = set()

    def degree_after(done: int, v: int) -> int:
        # vertices outside done+v reachable from v through done
        reach = f.component_of(v, done | 1 << v)
        return (f.nbr(reach) & ~done).bit_count()

    def search(done: int, order: list[int]) -> bool:
        if (full & ~done).bit_count() <= k + 1:
            order.extend(iter_bits(full & ~done))
            return True
        if done in failed:
            return False
        for v in iter_bits(full & ~done):
            if degree_after(done, v) <= k:
                order.append(v)
                if search(done | 1 << v, order):
                    return True
                order.pop()
        failed.add(done)
        return False

    order: list[int] = []
    return order if search(0, order) else None


def pattern_treewidth(f: Graph) -> int:
    if f.n > MAX_PATTERN_VERTICES:
        raise ValueError(f"pattern has {f.n} vertices, limit is {MAX_PATTERN_VERTICES}")
    k = 0
    while _elimination_order(f, k) is None:
        k += 1
    return k


def _fill_in(f: Graph, order: list[int]) -> Graph:
    adj = list(f.adj)
    gone = 0
    for v in order:
        later = adj[v] & ~gone
        for u in iter_bits(later):
            adj[u] |= later & ~(1 << u)
        gone |= 1 << v
    return Graph.from_adjacency(adj)


def _minimalise(f: Graph, h: Graph) -> Graph:
    """Drop fill edges one at a time while the graph stays chordal."""
    changed = True
    while changed:
        changed = False
        for u, v in list(h.edges()):
            if f.has_edge(u, v):
                continue
            adj = list(h.adj)
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
            trial = Graph.from_adjacency(adj)
            if is_chordal(trial):
                h = trial
                changed = True
                break
    return h


@dataclass
class PatternDecomposition:
    pattern: Graph
    tf: Graph
    maximal_cliques: list[VertexSet]
    pattern_blocks: list[Block]
    pattern_triples: list[GoodTriple]
    pattern_pmcs: list[PmcRecord]

    @property
    def width(self) -> int:
        return max((len(c) for c in self.maximal_cliques), default=0) - 1


def triangulate_pattern(f: Graph, t: int) -> PatternDecomposition:
    """Minimal triangulation of ``f`` with cliques of at most ``t+1`` vertices.

    An elimination order of width ``t`` is found by exhaustive search, its
    fill graph is thinned to a minimal triangulation, and the clique
    structure (maximal cliques, full blocks, good triples) is recorded.
    """
    if f.n > MAX_PATTERN_VERTICES:
        raise ValueError(f"pattern has {f.n} vertices, limit is {MAX_PATTERN_VERTICES}")
    order = _elimination_order(f, t)
    if order is None:
        raise PatternTreewidthError(f"pattern treewidth exceeds {t}")
    tf = _minimalise(f, _fill_in(f, order))
    cliques = chordal_maximal_cliques(tf)
    seps = minimal_separator_masks(tf)
    blocks = all_full_blocks(tf, seps)
    pmcs = [
        PmcRecord(c, tuple(VertexSet.from_bits(tf.n, s) for s in local_separator_masks(tf, c.bits)))
        for c in cliques
    ]
    return PatternDecomposition(f, tf, cliques, blocks, good_triples(tf, blocks, pmcs), pmcs)


# host side


class InducedIsoDP:
    """Memoised block DP deciding whether ``G`` has an induced copy of ``F``."""

    def __init__(
        self,
        g: Graph,
        decomposition: PatternDecomposition,
        t: int,
        artifacts: HostArtifacts,
        *,
        grouping: bool = True,
    ):
        self.g = g
        self.pd = decomposition
        self.f = decomposition.pattern
        self.tf = decomposition.tf
        self.t = t
        self.art = artifacts
        self.grouping = grouping
        self._alpha: dict = {}
        self._children: dict[int, list[tuple[int, int, int]]] = {}
        self.stats = {"alpha_states": 0, "matchings": 0, "grouped": 0}

    # helpers

    def _tf_components(self, mask: int) -> list[int]:
        return self.tf.components(mask)

    def _host_slots(self, inside: int) -> list[tuple[int, int, int]]:
        """``(block id, N(D), D)`` for the host components ``D`` of ``inside``."""
        out = []
        index = self.art.block_index
        for d in self.g.components(inside):
            s = self.g.nbr(d)
            out.append((index[(s, d)], s, d))
        return out

    def _triple_slots(self, tid: int) -> list[tuple[int, int, int]]:
        slots = self._children.get(tid)
        if slots is None:
            tr = self.art.triples[tid]
            c = self.art.blocks[tr.block_id].component.bits
            omega = self.art.pmcs[tr.omega_id].omega.bits
            slots = self._host_slots(c & ~omega)
            self._children[tid] = slots
        return slots

    def _clique_extensions(self, q: int, candidates: int, room: int) -> list[int]:
        """Subsets ``X`` of ``candidates`` with ``q | X`` a clique of ``TF``."""
        tf = self.tf
        common = candidates
        for v in iter_bits(q):
            common &= tf.adj[v]
        return [x for x in small_subsets(common, room) if tf.is_clique_mask(x)]

    def _extend(self, mu: dict[int, int], new: list[int], free: int):
        """Injective extensions of ``mu`` sending ``new`` into host set ``free``.

        Adjacency is checked against every vertex already mapped, so each
        yielded map is an induced isomorphism on its domain.
        """
        f, g = self.f, self.g
        if not new:
            yield dict(mu)
            return
        q, rest = new[0], new[1:]
        for x in iter_bits(free):
            if all(f.has_edge(q, p) == g.has_edge(x, y) for p, y in mu.items()):
                mu[q] = x
                yield from self._extend(mu, rest, free & ~(1 << x))
                del mu[q]

    # distributing pattern components over host components

    def _child_piece(self, slot, mu: dict[int, int], piece: int):
        """Embed ``piece`` into the host slot, respecting ``mu`` on the slot's separator."""
        bid, s, d = slot
        if piece.bit_count() > d.bit_count():
            return None
        q_k = 0
        for p, x in mu.items():
            if s >> x & 1:
                q_k |= 1 << p
        if self.tf.nbr(piece) & ~q_k:
            return None
        return self.alpha(bid, q_k, piece, tuple(mu[p] for p in iter_bits(q_k)))

    def _distribute(self, pieces: list[int], slots, mu: dict[int, int]) -> dict[int, int] | None:
        """Place every pattern component in ``pieces`` into some host slot."""
        if not pieces:
            return {}
        if len(pieces) <= len(slots):
            options = {}
            found = {}
            for i, piece in enumerate(pieces):
                options[i] = []
                for k, slot in enumerate(slots):
                    emb = self._child_piece(slot, mu, piece)
                    if emb is not None:
                        options[i].append(k)
                        found[(i, k)] = emb
            self.stats["matchings"] += 1
            size, pairs = maximum_bipartite_matching(options)
            if size == len(pieces):
                out: dict[int, int] = {}
                for i, k in pairs.items():
                    out.update(found[(i, k)])
                return out
        if not self.grouping or len(pieces) < 2:
            return None
        self.stats["grouped"] += 1
        return self._grouped(pieces, slots, mu)

    def _grouped(self, pieces: list[int], slots, mu: dict[int, int]) -> dict[int, int] | None:
        """Assign sets of pattern components to host slots (several per slot)."""
        n_pieces = len(pieces)
        full = (1 << n_pieces) - 1

        @lru_cache(maxsize=None)
        def place(k: int, remaining: int):
            if not remaining:
                return {}
            if k == len(slots):
                return None
            # subsets of the remaining pieces go into slot k, largest first
            sub = remaining
            while True:
                if sub:
                    union = 0
                    for i in iter_bits(sub):
                        union |= pieces[i]
                    emb = self._child_piece(slots[k], mu, union)
                    if emb is not None:
                        rest = place(k + 1, remaining & ~sub)
                        if rest is not None:
                            return {**emb, **rest}
                if not sub:
                    break
                sub = (sub - 1) & remaining
            return place(k + 1, remaining)

        return place(0, full)

    # block states

    def alpha(self, bid: int, q: int, piece: int, images: tuple[int, ...]) -> dict[int, int] | None:
        """Embedding of ``q + piece`` into host block ``bid`` extending ``q -> images``."""
        key = (bid, q, piece, images)
        if key in self._alpha:
            return self._alpha[key]
        self.stats["alpha_states"] += 1
        block = self.art.blocks[bid]
        s = block.separator.bits
        mu = dict(zip(iter_bits(q), images))
        result = None
        for tid in self.art.triples_by_block[bid]:
            result = self._beta(tid, s, q, piece, mu)
            if result is not None:
                break
        self._alpha[key] = result
        return result

    def _beta(self, tid: int, s: int, q: int, piece: int, mu: dict[int, int]) -> dict[int, int] | None:
        omega = self.art.pmcs[self.art.triples[tid].omega_id].omega.bits
        free = omega & ~s
        room = min(self.t + 1 - q.bit_count(), free.bit_count())
        for new in self._clique_extensions(q, piece, room):
            rest = piece & ~new
            slots = self._triple_slots(tid) if rest else []
            pieces = self._tf_components(rest)
            for mu2 in self._extend(dict(mu), list(iter_bits(new)), free):
                emb = self._distribute(pieces, slots, mu2)
                if emb is not None:
                    return {**mu2, **emb}
        return None

    # gluing

    def _in_one_pmc(self, comp: int, piece: int) -> dict[int, int] | None:
        if piece.bit_count() > self.t + 1:
            return None
        for rec in self.art.pmcs:
            omega = rec.omega.bits
            if omega & ~comp or omega.bit_count() < piece.bit_count():
                continue
            for mu in self._extend({}, list(iter_bits(piece)), omega):
                return mu
        return None

    def embed_in_component(self, comp: int, piece: int) -> dict[int, int] | None:
        """Embed a union of pattern components into one connected host component."""
        if piece.bit_count() > comp.bit_count():
            return None
        direct = self._in_one_pmc(comp, piece)
        if direct is not None:
            return direct
        for sep in self.art.separators:
            s = sep.bits
            if s & ~comp:
                continue
            slots = self._host_slots(comp & ~s)
            room = min(self.t + 1, s.bit_count())
            for qset in self._clique_extensions(0, piece, room):
                rest = piece & ~qset
                pieces = self._tf_components(rest)
                for mu in self._extend({}, list(iter_bits(qset)), s):
                    emb = self._distribute(pieces, slots, mu)
                    if emb is not None:
                        return {**mu, **emb}
        return None

    def solve(self) -> dict[int, int] | None:
        f, g = self.f, self.g
        if f.n == 0:
            return {}
        if f.n > g.n:
            return None
        pattern_parts = self.tf.components(self.tf.full)
        host_parts = g.components(g.full)

        @lru_cache(maxsize=None)
        def place(k: int, remaining: int):
            if not remaining:
                return {}
            if k == len(host_parts):
                return None
            sub = remaining
            while sub:
                union = 0
                for i in iter_bits(sub):
                    union |= pattern_parts[i]
                emb = self.embed_in_component(host_parts[k], union)
                if emb is not None:
                    rest = place(k + 1, remaining & ~sub)
                    if rest is not None:
                        return {**emb, **rest}
                sub = (sub - 1) & remaining
            return place(k + 1, remaining)

        return place(0, (1 << len(pattern_parts)) - 1)


def compute_iso_beta(dp: InducedIsoDP, triple_id: int, q: int, piece: int, images: tuple[int, ...]) -> int:
    """1 if the piece ``(q, piece)`` with ``q -> images`` embeds through the given good triple."""
    tr = dp.art.triples[triple_id]
    s = dp.art.blocks[tr.block_id].separator.bits
    mu = dict(zip(iter_bits(q), images))
    return int(dp._beta(triple_id, s, q, piece, mu) is not None)


def glue_iso_at_separators(dp: InducedIsoDP) -> dict[int, int] | None:
    """Top-level gluing: the whole pattern over the host's separators and PMCs."""
    return dp.solve()


def solve_induced_iso(
    g: Graph,
    f: Graph,
    t: int | None = None,
    artifacts: HostArtifacts | None = None,
    *,
    grouping: bool = True,
    stats: dict | None = None,
) -> dict[int, int] | None:
    """Return an induced embedding ``pattern vertex -> host vertex`` or ``None``.

    ``t`` defaults to the exact treewidth of the pattern.  A returned map is
    always checked edge by edge before it is handed out.

    >>> c4 = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    >>> solve_induced_iso(c4, Graph(3, [(0, 1), (1, 2), (0, 2)])) is None
    True
    """
    if f.n > g.n:
        return None
    if t is None:
        t = pattern_treewidth(f)
    pd = triangulate_pattern(f, t)
    if artifacts is None:
        artifacts = HostArtifacts.build(g)
    dp = InducedIsoDP(g, pd, t, artifacts, grouping=grouping)
    emb = glue_iso_at_separators(dp)
    if stats is not None:
        stats.update(dp.stats)
    if emb is not None:
        emb = dict(sorted(emb.items()))
        if not is_induced_embedding(g, f, emb):
            raise AssertionError(f"DP produced an invalid embedding {emb}")
    return emb
