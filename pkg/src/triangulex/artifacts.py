"""Host-side enumerations shared by the subgraph and isomorphism solvers."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph, VertexSet
from .minsep import Block, all_full_blocks, minimal_separator_masks
from .pmc import GoodTriple, PmcRecord, enumerate_pmcs, good_triples

__all__ = ["HostArtifacts"]


@dataclass
class HostArtifacts:
    """Minimal separators, full blocks, PMCs and good triples of one graph."""

    graph: Graph
    separators: list[VertexSet]
    blocks: list[Block]
    pmcs: list[PmcRecord]
    triples: list[GoodTriple]
    _block_index: dict[tuple[int, int], int] = field(default=None, init=False, repr=False)
    _triples_by_block: list[list[int]] = field(default=None, init=False, repr=False)

    @classmethod
    def build(cls, g: Graph, *, threads: int = 1) -> "HostArtifacts":
        seps = [VertexSet.from_bits(g.n, s) for s in minimal_separator_masks(g)]
        blocks = all_full_blocks(g, seps)
        pmcs = enumerate_pmcs(g, threads=threads)
        triples = good_triples(g, blocks, pmcs)
        return cls(g, seps, blocks, pmcs, triples)

    @property
    def block_index(self) -> dict[tuple[int, int], int]:
        """``(S mask, C mask) -> block id``."""
        if self._block_index is None:
            self._block_index = {
                (b.separator.bits, b.component.bits): i for i, b in enumerate(self.blocks)
            }
        return self._block_index

    @property
    def triples_by_block(self) -> list[list[int]]:
        """Triple ids of each block, in block order."""
        if self._triples_by_block is None:
            grouped = [[] for _ in self.blocks]
            for i, tr in enumerate(self.triples):
                grouped[tr.block_id].append(i)
            self._triples_by_block = grouped
        return self._triples_by_block

    def counts(self) -> dict[str, int]:
        return {
            "separators": len(self.separators),
            "blocks": len(self.blocks),
            "pmcs": len(self.pmcs),
            "good_triples": len(self.triples),
        }
