import random

from hypothesis import given
from hypothesis import strategies as st

from triangulex import maximum_bipartite_matching


def test_examples():
    full = {f"x{i}": [f"y{j}" for j in range(3)] for i in range(3)}
    assert maximum_bipartite_matching(full)[0] == 3
    assert maximum_bipartite_matching({"x1": [], "x2": []}) == (0, {})
    assert maximum_bipartite_matching({"x1": ["y1"], "x2": ["y1"]})[0] == 1


def test_list_input_and_determinism():
    g = [[0, 1], [0], [1, 2]]
    a = maximum_bipartite_matching(g)
    assert a == maximum_bipartite_matching(g)
    assert a[0] == 3 and a[1] == {0: 1, 1: 0, 2: 2}


def _brute(adj: dict) -> int:
    lefts = list(adj)

    def best(i, used):
        if i == len(lefts):
            return 0
        out = best(i + 1, used)
        for r in adj[lefts[i]]:
            if r not in used:
                out = max(out, 1 + best(i + 1, used | {r}))
        return out

    return best(0, frozenset())


@given(st.integers(0, 2**32), st.integers(0, 7), st.integers(0, 7), st.floats(0, 1))
def test_matches_exhaustive_search(seed, a, b, p):
    rng = random.Random(seed)
    adj = {i: [j for j in range(b) if rng.random() < p] for i in range(a)}
    size, pairs = maximum_bipartite_matching(adj)
    assert size == len(pairs) == _brute(adj)
    assert len(set(pairs.values())) == size
    assert all(r in adj[l] for l, r in pairs.items())
