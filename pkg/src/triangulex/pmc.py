"""Potential maximal cliques: recognition, enumeration and good triples."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .graph import Graph, VertexSet, iter_bits
from .minsep import Block, sort_key_bits

__all__ = [
    "PmcRecord",
    "GoodTriple",
    "is_pmc",
    "is_pmc_mask",
    "local_separator_masks",
    "enumerate_connected_sets",
    "connected_set_masks",
    "pmc_masks",
    "enumerate_pmcs",
    "good_triples",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PmcRecord:
    omega: VertexSet
    local_separators: tuple[VertexSet, ...]


@dataclass(frozen=True)
class GoodTriple:
    """Full block ``blocks[block_id]`` paired with PMC ``pmcs[omega_id]``."""

    block_id: int
    omega_id: int


def is_pmc_mask(g: Graph, k: int) -> bool:
    if not k:
        return False
    adj = g.adj
    seps = []
    for c in g.components(g.full & ~k):
        s = g.nbr(c)
        if s == k:
            return False
        if s:
            seps.append(s)
    for u in iter_bits(k):
        covered = adj[u] | 1 << u
        for s in seps:
            if s >> u & 1:
                covered |= s
        if k & ~covered:
            return False
    return True


def is_pmc(g: Graph, k) -> bool:
    """Check the two conditions characterising potential maximal cliques.

    ``K`` qualifies when no component of ``G - K`` sees all of ``K`` and every
    non-adjacent pair of ``K`` lies together in the neighbourhood of some
    component of ``G - K``.
    """
    return is_pmc_mask(g, g.vset(k).bits)


def local_separator_masks(g: Graph, omega: int) -> list[int]:
    """Distinct non-empty ``N(C)`` over components ``C`` of ``G - omega``."""
    seps = {g.nbr(c) for c in g.components(g.full & ~omega)}
    seps.discard(0)
    return sorted(seps, key=lambda s: (s.bit_count(), sort_key_bits(s)))


def connected_set_masks(g: Graph, z: int, prune: Callable[[int], bool]) -> Iterator[int]:
    """Connected vertex sets containing ``z``, each exactly once.

    ``prune`` must be monotone: once it rejects a set it rejects every
    superset, so rejected branches are cut.  Each node branches on the
    smallest extension vertex: first including it, then banning it.
    """
    adj = g.adj
    start = 1 << z
    if not prune(start):
        return

    def grow(current: int, ext: int, banned: int) -> Iterator[int]:
        yield current
        while ext:
            low = ext & -ext
            ext ^= low
            bigger = current | low
            if prune(bigger):
                child_ext = (ext | adj[low.bit_length() - 1]) & ~bigger & ~banned
                yield from grow(bigger, child_ext, banned)
            banned |= low

    yield from grow(start, adj[z], 0)


def enumerate_connected_sets(
    g: Graph, z: int, prune: Callable[[VertexSet], bool] | None = None
) -> Iterator[VertexSet]:
    if not 0 <= z < g.n:
        raise ValueError(f"start vertex {z} out of range")
    if prune is None:
        test = lambda mask: True  # noqa: E731
    else:
        test = lambda mask: prune(VertexSet.from_bits(g.n, mask))  # noqa: E731
    for mask in connected_set_masks(g, z, test):
        yield VertexSet.from_bits(g.n, mask)


def _pmcs_from_vertex(g: Graph, z: int, pruned: bool) -> set[int]:
    full = g.full
    zbit = 1 << z

    def budget(mask: int) -> bool:
        # |Z| - 1 <= 2 |V - N[Z - z]|
        rest = mask & ~zbit
        return rest.bit_count() <= 2 * (full & ~g.closed_nbr(rest)).bit_count()

    test = budget if pruned else (lambda mask: True)
    found = set()
    checked = set()
    for z_set in connected_set_masks(g, z, test):
        rest = z_set & ~zbit
        for cand in (g.nbr(rest) if rest else 0, g.nbr(z_set) | zbit):
            if cand and cand not in checked:
                checked.add(cand)
                if is_pmc_mask(g, cand):
                    found.add(cand)
    return found


def _worker(args):
    g, zs, pruned = args
    out = set()
    for z in zs:
        out |= _pmcs_from_vertex(g, z, pruned)
    return out


def pmc_masks(g: Graph, *, pruned: bool = True, threads: int = 1) -> list[int]:
    """All potential maximal cliques as masks, sorted lexicographically.

    For every start vertex ``z`` the connected sets ``Z`` containing ``z``
    with ``|Z| - 1 <= 2 |V - N[Z - z]|`` are enumerated, and both
    ``N(Z - z)`` and ``N(Z) + z`` are tested.  ``pruned=False`` drops the
    size budget and walks every connected set.
    """
    found: set[int] = set()
    if threads > 1 and g.n > 1:
        chunks = [list(range(i, g.n, threads)) for i in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_worker, [(g, zs, pruned) for zs in chunks if zs]):
                found |= part
    else:
        for z in range(g.n):
            found |= _pmcs_from_vertex(g, z, pruned)
    return sorted(found, key=sort_key_bits)


def enumerate_pmcs(g: Graph, *, pruned: bool = True, threads: int = 1) -> list[PmcRecord]:
    records = []
    for omega in pmc_masks(g, pruned=pruned, threads=threads):
        seps = tuple(VertexSet.from_bits(g.n, s) for s in local_separator_masks(g, omega))
        records.append(PmcRecord(VertexSet.from_bits(g.n, omega), seps))
    return records


def good_triples(g: Graph, blocks: Sequence[Block], pmcs: Sequence[PmcRecord]) -> list[GoodTriple]:
    """All ``(S, C, Omega)`` with ``S <= Omega <= S | C``, grouped by block.

    Every separator inside ``Omega`` is one of its local separators, and
    ``C`` must be the component of ``G - S`` holding ``Omega - S``, so each
    PMC is paired with at most one block per local separator.
    """
    index = {(b.separator.bits, b.component.bits): i for i, b in enumerate(blocks)}
    triples = []
    for omega_id, rec in enumerate(pmcs):
        omega = rec.omega.bits
        for sep in rec.local_separators:
            s = sep.bits
            inside = omega & ~s
            if not inside:
                continue
            c = g.component_of((inside & -inside).bit_length() - 1, g.full & ~s)
            assert omega & ~(s | c) == 0, "PMC leaves the block of its separator"
            block_id = index.get((s, c))
            if block_id is None:
                raise ValueError("block list is missing a full block of a local separator")
            triples.append(GoodTriple(block_id, omega_id))
    triples.sort(key=lambda tr: (tr.block_id, tr.omega_id))
    return triples
