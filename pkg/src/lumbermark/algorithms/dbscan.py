"""DBSCAN* as a threshold cut of the mutual reachability MST."""

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ..dataset import Partition
from ..neighbors import mutreach_matrix
from ._forest import forest_partition


def dbscan_star_cut(tree, eps) -> Partition:
    """Components of the tree edges with raw ``d_M <= eps``; singletons are noise."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    return forest_partition(tree, tree.w_mutreach <= eps, singletons_as_noise=True)


def dbscan_star_oracle(ps, ng, eps) -> Partition:
    """Brute-force DBSCAN*: components of the complete ``d_M <= eps`` graph.

    Quadratic in time and memory; only meant to validate `dbscan_star_cut`.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    DM, _ = mutreach_matrix(ng, ps)
    A = DM <= eps
    np.fill_diagonal(A, False)
    _, comp = connected_components(csr_matrix(A), directed=False)
    counts = np.bincount(comp)
    return Partition.from_raw(comp, counts[comp] == 1)
