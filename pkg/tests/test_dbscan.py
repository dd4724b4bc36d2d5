import numpy as np
import pytest

from lumbermark.algorithms import dbscan_star_cut, dbscan_star_oracle
from lumbermark.dataset import same_partition
from lumbermark.mst import build_tree, mst_boruvka_spatial, mst_kruskal_oracle, mst_prim
from lumbermark.neighbors import knn_bruteforce, mutreach_matrix

from conftest import random_instance

LINE = np.array([0.0, 1.0, 3.0, 7.0])


def test_line_example_cut():
    _, tree = build_tree(LINE, M=2)
    assert dbscan_star_cut(tree, 3.0).labels.tolist() == [1, 1, 1, 0]


def test_line_example_oracle():
    # d_2(0,1) = d_2(1,3) = d_2(0,3) = 3; every pair with 7 is >= 6
    ng = knn_bruteforce(LINE, 2)
    assert dbscan_star_oracle(LINE, ng, 3.0).labels.tolist() == [1, 1, 1, 0]


def test_extreme_eps(rng):
    X = rng.random((30, 2))
    ng, tree = build_tree(X, M=3)
    big = tree.w_mutreach.max()
    assert dbscan_star_cut(tree, big).labels.tolist() == [1] * 30
    assert dbscan_star_oracle(X, ng, big * 10).labels.tolist() == [1] * 30
    tiny = tree.w_mutreach.min() / 2
    assert dbscan_star_cut(tree, tiny).labels.tolist() == [0] * 30


def test_eps_must_be_positive():
    _, tree = build_tree(LINE, M=1)
    with pytest.raises(ValueError):
        dbscan_star_cut(tree, 0.0)


def test_tree_cut_equals_oracle(rng):
    for t in range(60):
        X, M = random_instance(rng, (2, 40), (1, 3), [1, 2, 5], ties=t % 2 == 0)
        ng = knn_bruteforce(X, M)
        trees = [fn(X, ng) for fn in (mst_prim, mst_kruskal_oracle, mst_boruvka_spatial)]
        DM, _ = mutreach_matrix(ng, X)
        vals = DM[np.triu_indices(len(X), 1)]
        lo = vals[vals > 0].min()
        eps_list = list(rng.uniform(lo * 0.9, vals.max() * 1.1, size=10))
        w = trees[0].w_mutreach
        eps_list += list(rng.choice(w[w > 0], size=5))  # exact thresholds
        for eps in eps_list:
            ref = dbscan_star_oracle(X, ng, eps)
            for tree in trees:
                assert same_partition(dbscan_star_cut(tree, eps), ref)
