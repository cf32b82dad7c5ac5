import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphs import complete, cycle, path, petersen, random_graph
from triangulex import Graph, HostArtifacts, VertexSet, max_induced_tw, solve_max_induced_tw
from triangulex.dp import DPError, TreewidthDP, small_subsets, sumset
from triangulex.graph import iter_bits
from triangulex.oracle import brute_max_induced_tw, treewidth_at_most


def block_id(art, s, c):
    return art.block_index[(VertexSet(art.graph.n, s).bits, VertexSet(art.graph.n, c).bits)]


def mask(*vs):
    return sum(1 << v for v in vs)


def test_sumset_and_subsets():
    assert sumset(0b011, 0b110, 1) == 0b111  # {0,1} + {1,2} - 1 = {0,1,2}
    assert sumset(0b1, 0b1, 0) == 0b1
    assert sumset(0, 0b111, 0) == 0
    assert sorted(small_subsets(0b111, 1)) == [0, 1, 2, 4]
    assert len(small_subsets(0b11111, 2)) == 1 + 5 + 10


def test_solver_examples():
    assert solve_max_induced_tw(cycle(5), 0)[0] == 2
    assert solve_max_induced_tw(cycle(4), 1)[0] == 3
    assert solve_max_induced_tw(petersen(), 1)[0] == 7
    assert solve_max_induced_tw(petersen(), 0)[0] == 4
    ell, wit = solve_max_induced_tw(complete(5), 2)
    assert ell == 3 and len(wit) == 3


def test_witnesses_are_certified():
    ell, wit = solve_max_induced_tw(cycle(5), 0)
    assert not any(cycle(5).has_edge(u, v) for u, v in combinations(wit, 2))
    ell, wit = solve_max_induced_tw(cycle(4), 1, certify=True)
    assert treewidth_at_most(cycle(4), 1, wit)


def test_profile_is_total_and_downward_closed():
    res = max_induced_tw(cycle(5), 0)
    assert res.profile == [True, True, True, False, False, False]
    assert res.decomposition.width() <= 0


def test_large_t_keeps_everything():
    g = random_graph(random.Random(1), 9, 0.6)
    assert solve_max_induced_tw(g, g.n - 1)[0] == g.n


def test_empty_and_tiny_graphs():
    assert solve_max_induced_tw(Graph(0), 1)[0] == 0
    assert solve_max_induced_tw(Graph(1), 0)[0] == 1
    assert solve_max_induced_tw(Graph(4), 0)[0] == 4


def test_negative_t_rejected():
    with pytest.raises(ValueError):
        max_induced_tw(cycle(4), -1)


def test_certification_refused_for_big_n_and_t():
    with pytest.raises(ValueError, match="refused"):
        max_induced_tw(random_graph(random.Random(0), 21, 0.1), 4, certify=True)


def test_alpha_base_examples():
    g = cycle(4)
    art = HostArtifacts.build(g)
    dp = TreewidthDP(g, 1, art)
    base = dp.compute_alpha_base(block_id(art, [0, 2], [1]))
    assert base[mask(0)] >> 1 & 1 == 1  # l = |W|
    assert base[mask(0)] >> 2 & 1 == 0
    assert base[0] & 1 == 1


def test_gamma_and_beta_examples():
    g = cycle(4)
    art = HostArtifacts.build(g)
    dp = TreewidthDP(g, 1, art)
    dp.process_blocks()
    bid = block_id(art, [0, 2], [1])
    (tid,) = art.triples_by_block[bid]
    assert art.pmcs[art.triples[tid].omega_id].omega.sorted() == [0, 1, 2]
    w = mask(0, 1)
    assert [dp.tables.beta_value(ell, w, tid) for ell in range(5)] == [0, 0, 1, 0, 0]
    for tid in range(len(art.triples)):
        for w in small_subsets(art.pmcs[art.triples[tid].omega_id].omega.bits, 2):
            assert dp.tables.gamma_value(w.bit_count(), 0, w, tid) == 1
            assert all(dp.tables.beta_value(ell, w, tid) == 0 for ell in range(w.bit_count()))


def test_p3_block_lift():
    g = path(3)
    art = HostArtifacts.build(g)
    dp = TreewidthDP(g, 1, art)
    dp.process_blocks()
    bid = block_id(art, [1], [0])
    assert dp.tables.alpha_value(1, mask(1), bid) == 1
    assert dp.tables.alpha_value(0, 0, bid) == 1


def test_reconstruct_rejects_unreachable_size():
    g = cycle(5)
    art = HostArtifacts.build(g)
    dp = TreewidthDP(g, 0, art)
    dp.process_blocks()
    dp.glue_at_separators()
    with pytest.raises(DPError):
        dp.reconstruct_witness(3)


def _oracle_alpha(g, t, s, c, w):
    """Sizes of X inside S+C with X & S = W whose graph, W made a clique, has treewidth <= t."""
    h = g.add_edges([(a, b) for a, b in combinations(iter_bits(w), 2)])
    sizes = 0
    cs = list(iter_bits(c))
    for r in range(len(cs) + 1):
        for xs in combinations(cs, r):
            x = w | mask(*xs)
            if treewidth_at_most(h, t, list(iter_bits(x))):
                sizes |= 1 << x.bit_count()
    return sizes


def test_every_alpha_entry_matches_its_definition():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(3, 8)
        g = random_graph(rng, n, rng.choice([0.3, 0.5]))
        t = rng.choice([0, 1, 2])
        art = HostArtifacts.build(g)
        dp = TreewidthDP(g, t, art)
        dp.process_blocks()
        for (bid, w), sizes in dp.tables.alpha.items():
            b = art.blocks[bid]
            assert sizes == _oracle_alpha(g, t, b.separator.bits, b.component.bits, w)


@given(st.integers(0, 2**32), st.integers(1, 10), st.floats(0.1, 0.9), st.integers(0, 2))
def test_matches_oracle_property(seed, n, p, t):
    g = random_graph(random.Random(seed), n, p)
    res = max_induced_tw(g, t)
    assert res.ell_max == brute_max_induced_tw(g, t)[0]
    assert len(res.witness) == res.ell_max
    assert res.decomposition.is_valid_for(g, res.witness)
    assert treewidth_at_most(g, t, res.witness)


def test_passing_precomputed_artifacts():
    g = random_graph(random.Random(8), 9, 0.4)
    art = HostArtifacts.build(g)
    got = solve_max_induced_tw(g, 1, pmcs=art.pmcs, seps=set(art.separators), blocks=art.blocks, triples=art.triples)
    assert got == solve_max_induced_tw(g, 1)
