"""Clustering on adjusted mutual reachability minimum spanning trees.

Typical use::

    from lumbermark import build_tree, lumbermark, LumbermarkParams

    ng, tree = build_tree(X, M=5)
    labels = lumbermark(tree, LumbermarkParams(k=3, f=0.25, M=5)).labels
"""

from .algorithms import (
    ClusteringError,
    CutState,
    GenieParams,
    LumbermarkParams,
    dbscan_star_cut,
    dbscan_star_oracle,
    genie,
    gini_index,
    leaves,
    lumbermark,
    lumbermark_cut,
    lumbermark_trace,
    single_linkage_cut,
)
from .dataset import (
    ParseError,
    Partition,
    PointSet,
    jitter,
    load_labels,
    load_points,
    make_blobs,
    same_partition,
    save_labels,
    save_points,
)
from .eval import ScoreReport, adjusted_rand, aggregate, best_ar
from .mst import (
    SpanningTree,
    TreeEdge,
    build_tree,
    mst,
    mst_boruvka_spatial,
    mst_kruskal_oracle,
    mst_prim,
)
from .neighbors import MutReachValue, NeighborGraph, knn, knn_bruteforce, knn_spatial, mutreach
from .pipeline import cluster

__version__ = "0.1.0"
