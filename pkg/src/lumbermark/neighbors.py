"""Nearest neighbours, core distances and mutual reachability."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._kernels import pairwise_euclid
from .dataset import as_pointset
from .kdtree import build_kdtree, knn_query


@dataclass(frozen=True, eq=False)
class NeighborGraph:
    """The ``M`` nearest neighbours of each point, self excluded.

    ``nn_index[i, j]`` is the ``(j+1)``-th nearest neighbour of ``i`` and
    ``nn_dist[i, j]`` its Euclidean distance; ``core[i]`` is the distance
    to the ``M``-th one.
    """

    M: int
    nn_index: np.ndarray
    nn_dist: np.ndarray
    core: np.ndarray

    @classmethod
    def from_arrays(cls, M, nn_index, nn_dist):
        nn_index = np.ascontiguousarray(nn_index, dtype=np.int64)
        nn_dist = np.ascontiguousarray(nn_dist, dtype=np.float64)
        core = np.ascontiguousarray(nn_dist[:, M - 1])
        for a in (nn_index, nn_dist, core):
            a.setflags(write=False)
        return cls(M=int(M), nn_index=nn_index, nn_dist=nn_dist, core=core)

    @property
    def n(self) -> int:
        return self.core.shape[0]


class MutReachValue(NamedTuple):
    """Mutual reachability distance paired with its Euclidean tie-breaker.

    Tuple comparison gives exactly the adjusted order: ``primary`` first,
    then ``tiebreak``.
    """

    primary: float
    tiebreak: float


def _check_M(n, M):
    if int(M) != M or M < 1:
        raise ValueError("M must be a positive integer")
    if M >= n:
        raise ValueError(f"M too large for sample size (M={M}, n={n})")


def knn_bruteforce(ps, M, chunk=1024) -> NeighborGraph:
    """Exact kNN by full distance scans, row block by row block."""
    ps = as_pointset(ps)
    n = ps.n
    _check_M(n, M)
    nn_index = np.empty((n, M), dtype=np.int64)
    nn_dist = np.empty((n, M), dtype=np.float64)
    for a in range(0, n, chunk):
        rows = np.arange(a, min(a + chunk, n))
        D = pairwise_euclid(ps.points, rows)
        D[np.arange(rows.size), rows] = np.inf
        # stable sort keeps ascending index order among equal distances
        order = np.argsort(D, axis=1, kind="stable")[:, :M]
        nn_index[rows] = order
        nn_dist[rows] = np.take_along_axis(D, order, axis=1)
    return NeighborGraph.from_arrays(M, nn_index, nn_dist)


def knn_spatial(ps, M, leaf_size=16) -> NeighborGraph:
    """Exact kNN through a K-d tree; output identical to `knn_bruteforce`."""
    ps = as_pointset(ps)
    _check_M(ps.n, M)
    tree = build_kdtree(ps.points, leaf_size=leaf_size)
    nn_index, nn_dist = knn_query(tree, int(M))
    return NeighborGraph.from_arrays(M, nn_index, nn_dist)


def knn(ps, M, method="auto") -> NeighborGraph:
    ps = as_pointset(ps)
    if method == "auto":
        method = "spatial" if ps.d <= 10 and ps.n > 64 else "brute"
    if method == "spatial":
        return knn_spatial(ps, M)
    if method == "brute":
        return knn_bruteforce(ps, M)
    raise ValueError(f"unknown kNN method {method!r}")


def euclidean(ps, i, j) -> float:
    ps = as_pointset(ps)
    return float(pairwise_euclid(ps.points, [i])[0, j])


def mutreach(ng: NeighborGraph, ps, i, j) -> MutReachValue:
    """Mutual reachability distance between points ``i`` and ``j``.

    ``max(d(i, j), core[i], core[j])`` with ``d(i, j)`` kept as the
    tie-breaker; ``(0, 0)`` when ``i == j``.
    """
    if i == j:
        return MutReachValue(0.0, 0.0)
    d = euclidean(ps, i, j)
    return MutReachValue(max(d, float(ng.core[i]), float(ng.core[j])), d)


def mutreach_matrix(ng: NeighborGraph, ps):
    """Dense ``(d_M, d)`` matrices; both zero on the diagonal."""
    ps = as_pointset(ps)
    D = pairwise_euclid(ps.points)
    core = ng.core
    DM = np.maximum(D, np.maximum(core[:, None], core[None, :]))
    np.fill_diagonal(DM, 0.0)
    return DM, D


def pair_key(dm, d, i, j):
    """Sort key realising the strict total order on point pairs."""
    return (dm, d, min(i, j), max(i, j))
