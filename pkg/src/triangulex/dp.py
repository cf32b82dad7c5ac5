"""Maximum induced subgraph of treewidth at most ``t`` over full blocks.

Tables map a state to the *set* of achievable sizes ``l``, stored as an
integer whose bit ``l`` is set when the boolean entry for ``l`` is 1:

``alpha[(block, W)]``
    sizes of selections ``F`` inside ``S + C`` of a full block ``(S, C)`` with
    ``F & S == W``, realisable with at most ``t+1`` selected vertices in every
    bag of a triangulation of the block built from its good triples;
``gamma[(triple, W)]``
    the running fold ``gamma_0 .. gamma_p`` over the components below a PMC
    ``Omega`` with ``F & Omega == W``; the last entry is ``beta``;
``delta[(separator, W)]``
    the same fold over all components of ``G - S`` for the final gluing.

Combining two size sets is a sum-set, computed by shifting.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .artifacts import HostArtifacts
from .graph import Graph, VertexSet, iter_bits
from .oracle import OracleBudget, default_budget, treewidth_at_most

__all__ = [
    "DPError",
    "DPTables",
    "TreeDecomposition",
    "TreewidthDP",
    "MaxInducedResult",
    "max_induced_tw",
    "solve_max_induced_tw",
]

logger = logging.getLogger(__name__)


class DPError(RuntimeError):
    """Broken ordering or reconstruction chain; always a bug."""


class _WriteOnce(dict):
    def __setitem__(self, key, value):
        if key in self:
            raise DPError(f"table entry {key!r} written twice")
        super().__setitem__(key, value)


def _bits(w) -> int:
    return w if isinstance(w, int) else w.bits


@lru_cache(maxsize=1 << 16)
def small_subsets(mask: int, k: int) -> tuple[int, ...]:
    """All subsets of ``mask`` with at most ``k`` elements."""
    members = list(iter_bits(mask))
    out = []
    for size in range(min(k, len(members)) + 1):
        for combo in combinations(members, size):
            sub = 0
            for v in combo:
                sub |= 1 << v
            out.append(sub)
    return tuple(out)


def sumset(a: int, b: int, offset: int) -> int:
    """``{x + y - offset : x in a, y in b}`` on size-set bit masks."""
    out = 0
    for y in iter_bits(b):
        out |= a << (y - offset)
    return out


@dataclass
class DPTables:
    alpha: dict = field(default_factory=_WriteOnce)
    gamma: dict = field(default_factory=_WriteOnce)
    delta: dict = field(default_factory=_WriteOnce)

    def alpha_value(self, ell: int, w, block_id: int) -> int:
        return self.alpha.get((block_id, _bits(w)), 0) >> ell & 1

    def gamma_value(self, ell: int, j: int, w, triple_id: int) -> int:
        folds = self.gamma.get((triple_id, _bits(w)))
        return 0 if folds is None or j >= len(folds) else folds[j] >> ell & 1

    def beta_value(self, ell: int, w, triple_id: int) -> int:
        folds = self.gamma.get((triple_id, _bits(w)))
        return 0 if folds is None else folds[-1] >> ell & 1

    def delta_value(self, ell: int, j: int, w, sep_id: int) -> int:
        folds = self.delta.get((sep_id, _bits(w)))
        return 0 if folds is None or j >= len(folds) else folds[j] >> ell & 1

    def size(self) -> int:
        return len(self.alpha) + len(self.gamma) + len(self.delta)


@dataclass
class TreeDecomposition:
    bags: list[VertexSet]
    edges: list[tuple[int, int]]

    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def is_valid_for(self, g: Graph, vertices: VertexSet) -> bool:
        """Check the decomposition covers ``G[vertices]`` and is a forest."""
        x = vertices.bits
        bags = [b.bits for b in self.bags]
        if any(b & ~x for b in bags):
            return False
        if any(not 0 <= a < len(bags) or not 0 <= b < len(bags) for a, b in self.edges):
            return False
        if len(self.edges) >= max(len(bags), 1) and bags:
            return False
        parent = list(range(len(bags)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[ra] = rb
        covered = 0
        for b in bags:
            covered |= b
        if covered != x:
            return False
        for u in iter_bits(x):
            others = g.adj[u] & x
            for v in iter_bits(others & ~((1 << (u + 1)) - 1)):
                pair = 1 << u | 1 << v
                if not any(b & pair == pair for b in bags):
                    return False
            holding = {i for i, b in enumerate(bags) if b >> u & 1}
            if not _connected_in(holding, self.edges):
                return False
        return True


def _connected_in(nodes: set[int], edges: list[tuple[int, int]]) -> bool:
    if not nodes:
        return True
    start = next(iter(nodes))
    seen = {start}
    todo = [start]
    while todo:
        i = todo.pop()
        for a, b in edges:
            for x, y in ((a, b), (b, a)):
                if x == i and y in nodes and y not in seen:
                    seen.add(y)
                    todo.append(y)
    return seen == nodes


class TreewidthDP:
    """Dynamic program over full blocks, good triples and minimal separators.

    Call :meth:`process_blocks`, then :meth:`glue_at_separators`, then
    :meth:`reconstruct_witness` for any size in the resulting profile.
    """

    def __init__(self, g: Graph, t: int, artifacts: HostArtifacts):
        if t < 0:
            raise ValueError("treewidth bound must be non-negative")
        self.g = g
        self.t = t
        self.art = artifacts
        self.tables = DPTables()
        self._children_cache: dict[int, list[tuple[int, int]]] = {}
        self._done_blocks = 0
        self.component_profiles: list[tuple[int, int, str]] = []

    # structure

    def _child_blocks(self, inside: int) -> list[tuple[int, int]]:
        """``(block id, N(D))`` for every component ``D`` of ``G[inside]``."""
        out = []
        index = self.art.block_index
        for d in self.g.components(inside):
            s = self.g.nbr(d)
            bid = index.get((s, d))
            if bid is None:
                raise DPError(f"missing full block for component {list(iter_bits(d))}")
            out.append((bid, s))
        return out

    def triple_children(self, triple_id: int) -> list[tuple[int, int]]:
        kids = self._children_cache.get(triple_id)
        if kids is None:
            tr = self.art.triples[triple_id]
            block = self.art.blocks[tr.block_id]
            omega = self.art.pmcs[tr.omega_id].omega.bits
            kids = self._child_blocks(block.component.bits & ~omega)
            self._children_cache[triple_id] = kids
        return kids

    def _fold(self, w: int, children: list[tuple[int, int]]) -> tuple[int, ...]:
        alpha = self.tables.alpha
        cur = 1 << w.bit_count()
        folds = [cur]
        for bid, s in children:
            if bid >= self._done_blocks:
                raise DPError(f"block {bid} needed before it was processed")
            ws = w & s
            cur = sumset(cur, alpha[(bid, ws)], ws.bit_count())
            folds.append(cur)
        return tuple(folds)

    # step 1: blocks

    def compute_alpha_base(self, block_id: int) -> dict[int, int]:
        """Entries of an inclusion-minimal block keyed by the selection ``W``.

        ``S + C`` is then a PMC with nothing below it, so the only realisable
        size for a selection ``W`` of at most ``t+1`` vertices is ``|W|``.
        """
        block = self.art.blocks[block_id]
        if not block.is_inclusion_minimal:
            raise ValueError(f"block {block_id} is not inclusion-minimal")
        return {w: 1 << w.bit_count() for w in small_subsets(block.vertices.bits, self.t + 1)}

    def compute_gamma(self, triple_id: int) -> None:
        tr = self.art.triples[triple_id]
        omega = self.art.pmcs[tr.omega_id].omega.bits
        children = self.triple_children(triple_id)
        gamma = self.tables.gamma
        for w in small_subsets(omega, self.t + 1):
            gamma[(triple_id, w)] = self._fold(w, children)

    def lift_alpha(self, block_id: int) -> None:
        block = self.art.blocks[block_id]
        s = block.separator.bits
        acc = dict.fromkeys(small_subsets(s, self.t + 1), 0)
        gamma = self.tables.gamma
        triples = self.art.triples_by_block[block_id]
        if not triples:
            raise DPError(f"full block {block_id} has no good triple")
        for tid in triples:
            omega = self.art.pmcs[self.art.triples[tid].omega_id].omega.bits
            for w in small_subsets(omega, self.t + 1):
                acc[w & s] |= gamma[(tid, w)][-1]
        for w, sizes in acc.items():
            self.tables.alpha[(block_id, w)] = sizes

    def process_blocks(self) -> None:
        gamma = self.tables.gamma
        for bid, block in enumerate(self.art.blocks):
            triples = self.art.triples_by_block[bid]
            if block.is_inclusion_minimal:
                if len(triples) != 1:
                    raise DPError(f"inclusion-minimal block {bid} has {len(triples)} triples")
                for w, sizes in self.compute_alpha_base(bid).items():
                    gamma[(triples[0], w)] = (sizes,)
            else:
                for tid in triples:
                    self.compute_gamma(tid)
            self._done_blocks = bid + 1
            self.lift_alpha(bid)

    # step 2: gluing

    def glue_at_separators(self) -> int:
        """Size profile of the whole graph as a bit mask over ``l``.

        Each connected component is solved on its own: a component without
        minimal separators is complete and admits up to ``t+1`` vertices;
        otherwise sizes come from the separator folds.  Components are then
        combined by a sum-set, since treewidth of a disjoint union is the
        maximum over its parts.
        """
        g = self.g
        seps = [s.bits for s in self.art.separators]
        total = 1
        self.component_profiles = []
        for comp in g.components(g.full):
            inside = [i for i, s in enumerate(seps) if s & ~comp == 0]
            if not inside:
                top = min(comp.bit_count(), self.t + 1)
                profile = (1 << (top + 1)) - 1
                self.component_profiles.append((comp, profile, "clique"))
            else:
                profile = 0
                for sid in inside:
                    s = seps[sid]
                    children = self._child_blocks(comp & ~s)
                    for w in small_subsets(s, self.t + 1):
                        folds = self._fold(w, children)
                        self.tables.delta[(sid, w)] = folds
                        profile |= folds[-1]
                self.component_profiles.append((comp, profile, "separators"))
            total = sumset(total, profile, 0)
        return total

    # reconstruction

    def _unfold(self, w: int, children, folds, ell: int, kids: list) -> None:
        alpha = self.tables.alpha
        for j in range(len(children), 0, -1):
            bid, s = children[j - 1]
            ws = w & s
            c = ws.bit_count()
            for sub in iter_bits(alpha[(bid, ws)]):
                rest = ell - sub + c
                if rest >= 0 and folds[j - 1] >> rest & 1:
                    kids.append((bid, ws, sub))
                    ell = rest
                    break
            else:
                raise DPError(f"no split for size {ell} at component {j}")
        if ell != w.bit_count():
            raise DPError("fold does not bottom out at |W|")

    def _rebuild_block(self, bid: int, w: int, ell: int, bags: list, edges: list, parent: int | None) -> int:
        block = self.art.blocks[bid]
        s = block.separator.bits
        room = self.t + 1 - w.bit_count()
        for tid in self.art.triples_by_block[bid]:
            omega = self.art.pmcs[self.art.triples[tid].omega_id].omega.bits
            for extra in small_subsets(omega & ~s, room):
                w2 = w | extra
                folds = self.tables.gamma[(tid, w2)]
                if folds[-1] >> ell & 1:
                    children = [] if len(folds) == 1 else self.triple_children(tid)
                    return self._rebuild_node(w2, children, folds, ell, bags, edges, parent)
        raise DPError(f"size {ell} not realisable in block {bid}")

    def _rebuild_node(self, w: int, children, folds, ell: int, bags: list, edges: list, parent) -> int:
        node = len(bags)
        bags.append(w)
        if parent is not None:
            edges.append((parent, node))
        kids: list = []
        self._unfold(w, children, folds, ell, kids)
        chosen = w
        for bid, ws, sub in kids:
            chosen |= self._rebuild_block(bid, ws, sub, bags, edges, node)
        return chosen

    def reconstruct_witness(self, ell: int) -> tuple[VertexSet, TreeDecomposition]:
        """A vertex set of size ``ell`` and a decomposition of width <= t."""
        n = self.g.n
        profiles = self.component_profiles
        # split ell over components by walking the knapsack backwards
        prefix = [1]
        for _, profile, _ in profiles:
            prefix.append(sumset(prefix[-1], profile, 0))
        if not prefix[-1] >> ell & 1:
            raise DPError(f"size {ell} is not in the profile")
        shares = [0] * len(profiles)
        rest = ell
        for i in range(len(profiles) - 1, -1, -1):
            for part in iter_bits(profiles[i][1]):
                if rest - part >= 0 and prefix[i] >> (rest - part) & 1:
                    shares[i] = part
                    rest -= part
                    break
        bags: list[int] = []
        edges: list[tuple[int, int]] = []
        chosen = 0
        roots = []
        for (comp, _, kind), share in zip(profiles, shares):
            if share == 0:
                continue
            roots.append(len(bags))
            if kind == "clique":
                pick = 0
                for v in list(iter_bits(comp))[:share]:
                    pick |= 1 << v
                bags.append(pick)
                chosen |= pick
                continue
            chosen |= self._rebuild_component(comp, share, bags, edges)
        edges.extend((a, b) for a, b in zip(roots, roots[1:]))
        witness = VertexSet.from_bits(n, chosen)
        if len(witness) != ell:
            raise DPError(f"reconstructed {len(witness)} vertices, expected {ell}")
        td = TreeDecomposition([VertexSet.from_bits(n, b) for b in bags], edges)
        return witness, td

    def _rebuild_component(self, comp: int, ell: int, bags: list, edges: list) -> int:
        for (sid, w), folds in self.tables.delta.items():
            s = self.art.separators[sid].bits
            if s & ~comp == 0 and folds[-1] >> ell & 1:
                children = self._child_blocks(comp & ~s)
                return self._rebuild_node(w, children, folds, ell, bags, edges, None)
        raise DPError(f"size {ell} not realisable in component")


@dataclass
class MaxInducedResult:
    ell_max: int
    witness: VertexSet
    profile: list[bool]
    decomposition: TreeDecomposition
    counts: dict[str, int]


def max_induced_tw(
    g: Graph,
    t: int,
    artifacts: HostArtifacts | None = None,
    *,
    certify: bool = False,
    budget: OracleBudget | None = None,
) -> MaxInducedResult:
    """Solve the problem and return the whole size profile with a certificate.

    The witness always comes with a tree decomposition of width <= t that is
    checked before returning.  ``certify`` additionally runs the exhaustive
    treewidth oracle on the witness.
    """
    if t < 0:
        raise ValueError("treewidth bound must be non-negative")
    if certify and g.n > 20 and t > 3:
        raise ValueError("oracle certification refused for n > 20 with t > 3")
    if artifacts is None:
        artifacts = HostArtifacts.build(g)
    dp = TreewidthDP(g, t, artifacts)
    dp.process_blocks()
    total = dp.glue_at_separators()
    ell_max = total.bit_length() - 1
    if total != (1 << (ell_max + 1)) - 1:
        raise DPError("size profile is not downward closed")
    witness, td = dp.reconstruct_witness(ell_max)
    if td.width() > t or not td.is_valid_for(g, witness):
        raise DPError("witness decomposition failed verification")
    if certify and not treewidth_at_most(g, t, witness, budget or default_budget()):
        raise DPError("oracle rejected the witness")
    counts = dict(artifacts.counts(), dp_states=dp.tables.size())
    profile = [bool(total >> ell & 1) for ell in range(g.n + 1)]
    return MaxInducedResult(ell_max, witness, profile, td, counts)


def solve_max_induced_tw(
    g: Graph,
    t: int,
    pmcs=None,
    seps=None,
    blocks=None,
    triples=None,
    *,
    certify: bool = False,
) -> tuple[int, VertexSet]:
    """Largest ``l`` with an ``l``-vertex induced subgraph of treewidth <= t.

    Precomputed enumerations may be passed in; anything missing is built.

    >>> from triangulex.graph import Graph
    >>> solve_max_induced_tw(Graph(5, [(i, (i + 1) % 5) for i in range(5)]), 0)[0]
    2
    """
    if pmcs is None or seps is None or blocks is None or triples is None:
        art = HostArtifacts.build(g)
    else:
        seps = sorted(seps, key=lambda s: (len(s), s.sort_key()))
        art = HostArtifacts(g, seps, list(blocks), list(pmcs), list(triples))
    res = max_induced_tw(g, t, art, certify=certify)
    return res.ell_max, res.witness
