"""Minimal separators and full blocks.

A set ``S`` is a minimal separator when ``G - S`` has at least two full
components, i.e. components ``C`` with ``N(C) = S``.  The empty set is never
reported, so disconnected graphs do not gain a separator from being
disconnected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, VertexSet, iter_bits

__all__ = [
    "Block",
    "is_minimal_separator",
    "enumerate_minimal_separators",
    "minimal_separator_masks",
    "all_full_blocks",
    "sort_key_bits",
]


def sort_key_bits(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))


@dataclass(frozen=True)
class Block:
    """Separator ``S`` with one component ``C`` of ``G - S``."""

    separator: VertexSet
    component: VertexSet
    is_full: bool
    is_inclusion_minimal: bool

    @property
    def vertices(self) -> VertexSet:
        return self.separator | self.component

    def __repr__(self) -> str:
        return f"Block(S={self.separator.sorted()}, C={self.component.sorted()})"


def _full_component_count(g: Graph, s: int) -> int:
    return sum(1 for c in g.components(g.full & ~s) if g.nbr(c) == s)


def is_minimal_separator(g: Graph, s) -> bool:
    s = g.vset(s).bits
    if not s or s == g.full:
        return False
    return _full_component_count(g, s) >= 2


def minimal_separator_masks(g: Graph) -> list[int]:
    """All minimal separators as masks, sorted by size then lexicographically.

    Seeds are ``N(C)`` for the components ``C`` of ``G - N[v]``; each found
    separator ``S`` is expanded through ``N(C)`` for the components of
    ``G - (S | N[x])``, ``x`` in ``S``, until nothing new appears.
    """
    full = g.full
    adj = g.adj
    seen: set[int] = set()
    stack: list[int] = []

    def offer(closed: int) -> None:
        for c in g.components(full & ~closed):
            s = g.nbr(c)
            if s and s not in seen:
                seen.add(s)
                stack.append(s)

    for v in range(g.n):
        offer(adj[v] | 1 << v)
    while stack:
        s = stack.pop()
        for x in iter_bits(s):
            offer(s | adj[x])
    return sorted(seen, key=lambda s: (s.bit_count(), sort_key_bits(s)))


def enumerate_minimal_separators(g: Graph) -> set[VertexSet]:
    return {VertexSet.from_bits(g.n, s) for s in minimal_separator_masks(g)}


def _as_masks(g: Graph, seps: Iterable) -> list[int]:
    out = []
    for s in seps:
        out.append(s if isinstance(s, int) else g.vset(s).bits)
    return out


def all_full_blocks(g: Graph, seps: Iterable) -> list[Block]:
    """Every full block ``(S, C)`` over the given separators, smallest first.

    Blocks are ordered by ``|S | C|`` with ties broken lexicographically on
    the sorted vertex list of ``S | C`` (which identifies the block).  A block
    is flagged inclusion-minimal when no other full block has a component
    strictly inside ``C``; such a block is exactly one whose vertex set is a
    potential maximal clique, which is what gets tested here.
    """
    from .pmc import is_pmc_mask

    found = []
    for s in set(_as_masks(g, seps)):
        for c in g.components(g.full & ~s):
            if g.nbr(c) == s:
                found.append((s, c))
    found.sort(key=lambda sc: ((sc[0] | sc[1]).bit_count(), sort_key_bits(sc[0] | sc[1])))
    return [
        Block(
            VertexSet.from_bits(g.n, s),
            VertexSet.from_bits(g.n, c),
            True,
            is_pmc_mask(g, s | c),
        )
        for s, c in found
    ]
