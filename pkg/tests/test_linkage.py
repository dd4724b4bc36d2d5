import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lumbermark.algorithms import GenieParams, genie, gini_index, single_linkage_cut
from lumbermark.mst import SpanningTree, build_tree

from conftest import random_points


def _brute_gini(sizes):
    k = len(sizes)
    if k == 1:
        return 0.0
    num = sum(abs(a - b) for a, b in itertools.combinations(sizes, 2))
    return num / ((k - 1) * sum(sizes))


@pytest.mark.parametrize("sizes,expected", [([2, 2, 2], 0.0), ([1, 3], 0.5), ([1, 1, 1, 97], 0.96), ([5], 0.0)])
def test_gini_examples(sizes, expected):
    assert gini_index(sizes) == pytest.approx(expected, abs=1e-15)
    assert _brute_gini(sizes) == pytest.approx(expected, abs=1e-15)


@given(st.lists(st.integers(1, 1000), min_size=1, max_size=30))
def test_gini_matches_pairwise_definition(sizes):
    g = gini_index(sizes)
    assert 0.0 <= g <= 1.0
    assert g == pytest.approx(_brute_gini(sizes), rel=1e-12, abs=1e-15)


def test_gini_rejects_empty():
    with pytest.raises(ValueError):
        gini_index([])


def _path4():
    return SpanningTree.from_edges(4, 1, [0, 1, 2], [1, 2, 3], [1.0] * 3, [1.0] * 3)


def test_single_linkage_tie_uses_index_pair():
    # equal weights: (2,3) is the largest edge under the index-pair fallback
    assert single_linkage_cut(_path4(), 2).labels.tolist() == [1, 1, 1, 2]


def test_single_linkage_long_edge():
    t = build_tree(np.array([0, 1, 2, 3, 10, 11, 12, 13.0]), M=1)[1]
    assert single_linkage_cut(t, 2).labels.tolist() == [1] * 4 + [2] * 4
    assert single_linkage_cut(t, 1).labels.tolist() == [1] * 8


def test_single_linkage_bounds():
    with pytest.raises(ValueError):
        single_linkage_cut(_path4(), 5)


def test_genie_G1_is_single_linkage(rng):
    for t in range(20):
        X = random_points(rng, int(rng.integers(5, 100)), 2, ties=t % 4 == 0)
        tree = build_tree(X, M=int(rng.choice([1, 3])))[1]
        for k in range(1, 7):
            assert genie(tree, GenieParams(k=k, G=1.0, M=tree.M)) == single_linkage_cut(tree, k)


def test_genie_two_groups():
    t = build_tree(np.array([0, 1, 2, 3, 10, 11, 12, 13.0]), M=1)[1]
    assert genie(t, GenieParams(k=2, G=0.3, M=1)).labels.tolist() == [1] * 4 + [2] * 4


def _replay(tree, steps, G):
    """Re-run the merge log with naive bookkeeping and check every step."""
    cluster = list(range(tree.n))
    used = set()
    for step in steps:
        sizes = np.bincount(cluster)
        live = sizes[sizes > 0]
        assert step.gini_before == pytest.approx(_brute_gini(live.tolist()), abs=1e-12)
        assert step.gated == (step.gini_before > G)
        unused = [e for e in range(tree.n_edges) if e not in used]
        if not step.gated:
            assert step.edge == min(unused)
        else:
            m = live.min()
            ok = [e for e in unused
                  if sizes[cluster[tree.u[e]]] == m or sizes[cluster[tree.v[e]]] == m]
            assert step.edge == min(ok)
        a, b = cluster[tree.u[step.edge]], cluster[tree.v[step.edge]]
        assert a != b
        cluster = [a if c == b else c for c in cluster]
        used.add(step.edge)


def test_genie_steps_follow_the_gate(rng):
    for t in range(20):
        X = random_points(rng, int(rng.integers(5, 60)), 2)
        tree = build_tree(X, M=int(rng.choice([1, 3])))[1]
        G = float(rng.choice([0.0, 0.1, 0.3, 0.5]))
        k = int(rng.integers(1, 6))
        part, steps = genie(tree, GenieParams(k=k, G=G, M=tree.M), return_steps=True)
        assert part.k == k and len(steps) == tree.n - k
        _replay(tree, steps, G)


def test_genie_gate_balances_sizes():
    # a long thin chain plus a tight pair: single linkage splits off a
    # singleton, Genie with a low G does not
    X = np.array([0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 9.05, 9.1, 30.0])
    tree = build_tree(X, M=1)[1]
    sl = single_linkage_cut(tree, 2)
    g = genie(tree, GenieParams(k=2, G=0.1, M=1))
    assert sorted(sl.sizes().tolist()) == [1, 12]
    assert min(g.sizes()) > 1
