"""End-to-end helpers: points -> tree -> partition, with stage timings."""

from __future__ import annotations

import time

from .algorithms import (
    GenieParams,
    LumbermarkParams,
    dbscan_star_cut,
    genie,
    lumbermark,
    single_linkage_cut,
)
from .dataset import as_pointset
from .mst import mst
from .neighbors import knn

ALGORITHMS = ("lumbermark", "genie", "single", "dbscan-star")


def fit_tree(X, M=5, mst_method="auto"):
    """Return ``(tree, timings)`` where timings has ``knn`` and ``mst`` seconds."""
    ps = as_pointset(X)
    t0 = time.perf_counter()
    ng = knn(ps, M)
    t1 = time.perf_counter()
    tree = mst(ps, ng, method=mst_method)
    t2 = time.perf_counter()
    return tree, {"knn": t1 - t0, "mst": t2 - t1}


def cut_tree(tree, algorithm, k=None, f=0.25, G=0.3, eps=None, leaf_removal=True):
    if algorithm == "lumbermark":
        return lumbermark(tree, LumbermarkParams(k=k, f=f, M=tree.M, leaf_removal=leaf_removal))
    if algorithm == "genie":
        return genie(tree, GenieParams(k=k, G=G, M=tree.M))
    if algorithm == "single":
        return single_linkage_cut(tree, k)
    if algorithm == "dbscan-star":
        return dbscan_star_cut(tree, eps)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def cluster(X, algorithm="lumbermark", k=None, M=5, f=0.25, G=0.3, eps=None,
            leaf_removal=True, mst_method="auto"):
    """Cluster raw points; returns ``(Partition, timings)``."""
    tree, timings = fit_tree(X, M=M, mst_method=mst_method)
    t0 = time.perf_counter()
    part = cut_tree(tree, algorithm, k=k, f=f, G=G, eps=eps, leaf_removal=leaf_removal)
    timings["cut"] = time.perf_counter() - t0
    return part, timings
