import random

from hypothesis import given
from hypothesis import strategies as st

from graphs import atlas, complete, cycle, fixtures, path, random_graph
from triangulex import (
    Graph,
    VertexSet,
    all_full_blocks,
    enumerate_minimal_separators,
    is_minimal_separator,
    is_pmc,
)
from triangulex.minsep import minimal_separator_masks
from triangulex.oracle import brute_minimal_separators


def sets(*groups, n):
    return {VertexSet(n, g) for g in groups}


def test_is_minimal_separator_examples():
    assert is_minimal_separator(path(3), [1])
    assert is_minimal_separator(cycle(4), [0, 2])
    k4 = complete(4)
    for s in ([0], [0, 1], [0, 1, 2], []):
        assert not is_minimal_separator(k4, s)


def test_enumerate_examples():
    assert enumerate_minimal_separators(path(3)) == sets([1], n=3)
    assert enumerate_minimal_separators(cycle(4)) == sets([0, 2], [1, 3], n=4)
    c5 = enumerate_minimal_separators(cycle(5))
    assert c5 == {VertexSet(5, [i, j]) for i in range(5) for j in range(i + 2, 5) if (i, j) != (0, 4)}
    assert len(c5) == 5


def test_no_separators_in_complete_or_edgeless_graphs():
    assert enumerate_minimal_separators(complete(5)) == set()
    # the empty set is never reported, even when G is disconnected
    assert enumerate_minimal_separators(Graph(5)) == set()


def test_full_blocks_examples():
    c4 = cycle(4)
    blocks = all_full_blocks(c4, enumerate_minimal_separators(c4))
    got = {(b.separator.sorted().__repr__(), b.component.sorted().__repr__()) for b in blocks}
    assert got == {
        ("[0, 2]", "[1]"),
        ("[0, 2]", "[3]"),
        ("[1, 3]", "[0]"),
        ("[1, 3]", "[2]"),
    }
    assert all(b.is_full and b.is_inclusion_minimal for b in blocks)
    assert all_full_blocks(complete(4), []) == []
    p3 = all_full_blocks(path(3), enumerate_minimal_separators(path(3)))
    assert [(b.separator.sorted(), b.component.sorted()) for b in p3] == [([1], [0]), ([1], [2])]


def test_blocks_sorted_by_size_then_members():
    rng = random.Random(5)
    for _ in range(40):
        g = random_graph(rng, rng.randint(4, 10), 0.4)
        blocks = all_full_blocks(g, enumerate_minimal_separators(g))
        keys = [(len(b.vertices), b.vertices.sorted()) for b in blocks]
        assert keys == sorted(keys)
        for b in blocks:
            assert g.nbr(b.component.bits) == b.separator.bits
            assert b.is_inclusion_minimal == is_pmc(g, b.vertices)


def test_masks_are_deterministic_and_sorted():
    g = cycle(7)
    a, b = minimal_separator_masks(g), minimal_separator_masks(g)
    assert a == b
    assert [m.bit_count() for m in a] == sorted(m.bit_count() for m in a)


def test_exhaustive_small_atlas_matches_oracle():
    for g in atlas(6):
        assert enumerate_minimal_separators(g) == brute_minimal_separators(g)


def test_fixtures_match_oracle():
    for name, g in fixtures(9):
        assert enumerate_minimal_separators(g) == brute_minimal_separators(g), name


@given(st.integers(0, 2**32), st.integers(1, 9), st.floats(0.1, 0.9))
def test_every_reported_separator_has_two_full_components(seed, n, p):
    g = random_graph(random.Random(seed), n, p)
    for s in enumerate_minimal_separators(g):
        comps = g.components(g.full & ~s.bits)
        assert sum(g.nbr(c) == s.bits for c in comps) >= 2
