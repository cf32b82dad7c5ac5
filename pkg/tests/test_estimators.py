import networkx as nx
import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from graphs import cycle, petersen
from triangulex import InducedSubgraphMatcher, MaxInducedTreewidthSubgraph, PMCEnumerator
from triangulex.validation import check_graph, check_treewidth


def test_check_graph_inputs():
    g = cycle(4)
    assert check_graph(g) is g
    assert check_graph(nx.cycle_graph(4)) == g
    a = np.array([[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0]])
    assert check_graph(a) == g
    assert check_graph(nx.relabel_nodes(nx.path_graph(3), {0: "a", 1: "b", 2: "c"})).m == 2


@pytest.mark.parametrize(
    "bad, err",
    [
        (np.zeros((2, 3)), ValueError),
        (np.array([[0, 1], [0, 0]]), ValueError),
        (np.eye(2), ValueError),
        ("0 1", TypeError),
        (nx.DiGraph([(0, 1)]), ValueError),
    ],
)
def test_check_graph_rejects(bad, err):
    with pytest.raises(err):
        check_graph(bad)


def test_check_treewidth():
    assert check_treewidth(np.int64(2)) == 2
    with pytest.raises(ValueError):
        check_treewidth(-1)
    with pytest.raises(TypeError):
        check_treewidth(1.5)


def test_max_induced_estimator():
    est = MaxInducedTreewidthSubgraph(treewidth=1)
    assert est.get_params() == {"treewidth": 1, "certify": False}
    with pytest.raises(NotFittedError):
        est.get_support()
    est.fit(nx.petersen_graph())
    assert est.ell_max_ == 7 and est.support_.sum() == 7
    sub = est.transform(None)
    assert sub.shape == (7, 7) and nx.is_forest(nx.from_numpy_array(sub))
    assert list(est.get_support(indices=True)) == list(np.flatnonzero(est.support_))
    assert est.profile_[:8].all() and not est.profile_[8:].any()
    with pytest.raises(ValueError):
        est.transform(cycle(4))


def test_fit_transform_and_clone():
    est = MaxInducedTreewidthSubgraph(treewidth=0, certify=True)
    out = est.fit_transform(petersen())
    assert out.shape == (4, 4) and not out.any()
    copy = clone(est)
    assert copy.get_params() == est.get_params() and not hasattr(copy, "support_")


def test_bad_params_raise_at_fit():
    with pytest.raises(ValueError):
        MaxInducedTreewidthSubgraph(treewidth=-2).fit(cycle(4))


def test_pmc_enumerator():
    est = PMCEnumerator().fit(cycle(4))
    mat = est.transform(None)
    assert mat.shape == (4, 4) and (mat.sum(axis=1) == 3).all()
    assert est.separators_ == [[0, 2], [1, 3]]
    with pytest.raises(ValueError):
        est.transform(cycle(5))


def test_matcher():
    m = InducedSubgraphMatcher(pattern=nx.cycle_graph(5)).fit(nx.petersen_graph())
    assert m.found_ and len(m.embedding_) == 5
    assert list(m.predict([petersen(), cycle(5), cycle(4)])) == [True, True, False]
    assert not InducedSubgraphMatcher(pattern=cycle(4), treewidth=2).fit(petersen()).found_
    with pytest.raises(ValueError):
        InducedSubgraphMatcher().fit(cycle(4))
