import random
from itertools import product

from hypothesis import given
from hypothesis import strategies as st

from graphs import atlas, complete, cycle, fixtures, path, random_graph
from triangulex import (
    Graph,
    HostArtifacts,
    VertexSet,
    enumerate_pmcs,
    is_minimal_separator,
    is_pmc,
)
from triangulex.pmc import enumerate_connected_sets, pmc_masks
from triangulex.oracle import brute_pmcs, pmcs_by_triangulations


def omegas(g):
    return {r.omega for r in enumerate_pmcs(g)}


def test_is_pmc_examples():
    c4 = cycle(4)
    assert is_pmc(c4, [0, 1, 2])
    assert not is_pmc(c4, [0, 1])
    assert is_pmc(complete(3), [0, 1, 2])


def test_enumerate_examples():
    assert omegas(path(3)) == {VertexSet(3, [0, 1]), VertexSet(3, [1, 2])}
    assert omegas(cycle(4)) == {VertexSet(4, s) for s in ([0, 1, 2], [1, 2, 3], [0, 2, 3], [0, 1, 3])}
    assert omegas(complete(4)) == {VertexSet(4, range(4))}


def test_edgeless_graph_has_singleton_pmcs():
    assert omegas(Graph(5)) == {VertexSet(5, [v]) for v in range(5)}


def test_connected_sets_examples():
    def as_lists(g, z, prune):
        return sorted(s.sorted() for s in enumerate_connected_sets(g, z, prune))

    assert as_lists(path(3), 0, lambda z: True) == [[0], [0, 1], [0, 1, 2]]
    assert as_lists(complete(3), 0, lambda z: True) == [[0], [0, 1], [0, 1, 2], [0, 2]]
    for g in (path(4), cycle(5), complete(4)):
        assert as_lists(g, 1, lambda z: len(z) <= 1) == [[1]]


def test_connected_sets_are_complete_and_distinct():
    g = cycle(6)
    found = [s.bits for s in enumerate_connected_sets(g, 0, lambda z: True)]
    assert len(found) == len(set(found))
    expected = [m for m in range(1 << 6) if m & 1 and g.is_connected_mask(m)]
    assert sorted(found) == sorted(expected)


def test_good_triples_c4_by_predicate_exhaustion():
    g = cycle(4)
    art = HostArtifacts.build(g)
    got = {(art.blocks[t.block_id].separator, art.blocks[t.block_id].component, art.pmcs[t.omega_id].omega)
           for t in art.triples}
    # predicate straight from the definition over every (block, PMC) pair
    expected = set()
    for block, rec in product(art.blocks, art.pmcs):
        s, c, om = block.separator, block.component, rec.omega
        if not (s < om and om <= (s | c)):
            continue
        rest = (s | c) - om
        comps = g.components(rest.bits)
        if all(g.nbr(d) & ~om.bits == 0 for d in comps):
            expected.add((s, c, om))
    assert got == expected
    assert len(got) == 4
    omega = VertexSet(4, [0, 1, 2])
    assert {(tuple(s), tuple(c)) for s, c, om in got if om == omega} == {((0, 2), (1,))}


def test_good_triples_small_examples():
    assert HostArtifacts.build(complete(4)).triples == []
    art = HostArtifacts.build(path(3))
    rows = {(art.blocks[t.block_id].separator.sorted().__repr__(), art.blocks[t.block_id].component.sorted().__repr__(),
             art.pmcs[t.omega_id].omega.sorted().__repr__()) for t in art.triples}
    assert ("[1]", "[0]", "[0, 1]") in rows


def test_triples_per_pmc_at_most_n():
    rng = random.Random(11)
    for _ in range(30):
        g = random_graph(rng, rng.randint(4, 11), rng.choice([0.2, 0.4, 0.6]))
        art = HostArtifacts.build(g)
        per = {}
        for t in art.triples:
            per[t.omega_id] = per.get(t.omega_id, 0) + 1
        assert all(v <= g.n for v in per.values())
        for rec in art.pmcs:
            assert len(rec.local_separators) <= g.n


def test_local_separators_are_minimal_and_proper():
    rng = random.Random(2)
    for _ in range(50):
        g = random_graph(rng, rng.randint(3, 10), 0.4)
        for rec in enumerate_pmcs(g):
            for s in rec.local_separators:
                assert is_minimal_separator(g, s) and s < rec.omega


def test_small_atlas_matches_both_oracles():
    for g in atlas(6):
        fast = omegas(g)
        assert fast == brute_pmcs(g)
        assert fast == pmcs_by_triangulations(g)


def test_fixtures_match_oracle():
    for name, g in fixtures(9):
        assert omegas(g) == brute_pmcs(g), name


def test_pruning_does_not_change_the_answer():
    rng = random.Random(9)
    for _ in range(40):
        g = random_graph(rng, rng.randint(2, 10), rng.choice([0.2, 0.5, 0.8]))
        assert pmc_masks(g, pruned=True) == pmc_masks(g, pruned=False)


def test_threads_give_the_same_list():
    g = random_graph(random.Random(4), 12, 0.3)
    assert pmc_masks(g, threads=2) == pmc_masks(g, threads=1)


@given(st.integers(0, 2**32), st.integers(1, 9), st.floats(0.1, 0.9))
def test_every_pmc_passes_the_recognition_test(seed, n, p):
    g = random_graph(random.Random(seed), n, p)
    for rec in enumerate_pmcs(g):
        assert is_pmc(g, rec.omega)
