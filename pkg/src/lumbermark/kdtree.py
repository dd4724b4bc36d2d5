"""Exact K-d tree used for nearest-neighbour queries and spatial Borůvka."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from ._kernels import box_lower_bound, dist


@dataclass(frozen=True)
class KDTree:
    """Array-backed K-d tree over the rows of ``X``.

    A child node always has a larger index than its parent. Points of node
    ``t`` are ``perm[start[t]:end[t]]``; leaves have ``left[t] == -1``.
    ``lo``/``hi`` are tight bounding boxes.
    """

    X: np.ndarray
    perm: np.ndarray
    start: np.ndarray
    end: np.ndarray
    left: np.ndarray
    right: np.ndarray
    lo: np.ndarray
    hi: np.ndarray

    @property
    def n_nodes(self) -> int:
        return self.start.shape[0]


def build_kdtree(X, leaf_size=16) -> KDTree:
    X = np.ascontiguousarray(X, dtype=np.float64)
    n = X.shape[0]
    perm = np.arange(n, dtype=np.int64)
    start, end, left, right, lo, hi = [], [], [], [], [], []

    def new_node(a, b):
        pts = X[perm[a:b]]
        start.append(a)
        end.append(b)
        left.append(-1)
        right.append(-1)
        lo.append(pts.min(axis=0))
        hi.append(pts.max(axis=0))
        return len(start) - 1

    root = new_node(0, n)
    stack = [root]
    while stack:
        t = stack.pop()
        a, b = start[t], end[t]
        span = hi[t] - lo[t]
        if b - a <= leaf_size or not np.any(span > 0):
            continue
        axis = int(np.argmax(span))
        mid = (a + b) // 2
        seg = perm[a:b]
        order = np.argpartition(X[seg, axis], mid - a, kind="introselect")
        perm[a:b] = seg[order]
        left[t] = new_node(a, mid)
        right[t] = new_node(mid, b)
        stack.append(right[t])
        stack.append(left[t])

    return KDTree(
        X=X,
        perm=perm,
        start=np.array(start, dtype=np.int64),
        end=np.array(end, dtype=np.int64),
        left=np.array(left, dtype=np.int64),
        right=np.array(right, dtype=np.int64),
        lo=np.ascontiguousarray(lo, dtype=np.float64),
        hi=np.ascontiguousarray(hi, dtype=np.float64),
    )


@njit(cache=True)
def _knn_query(X, M, perm, start, end, left, right, lo, hi):
    n = X.shape[0]
    nn_idx = np.empty((n, M), dtype=np.int64)
    nn_dst = np.empty((n, M), dtype=np.float64)
    stack = np.empty(start.shape[0] + 1, dtype=np.int64)
    for i in range(n):
        # sorted insertion buffer ordered by (distance, index)
        bd = np.full(M, np.inf)
        bi = np.full(M, n, dtype=np.int64)
        stack[0] = 0
        top = 1
        while top > 0:
            top -= 1
            t = stack[top]
            if box_lower_bound(X, i, lo, hi, t) > bd[M - 1]:
                continue
            if left[t] < 0:
                for p in range(start[t], end[t]):
                    j = perm[p]
                    if j == i:
                        continue
                    dj = dist(X, i, j)
                    if dj < bd[M - 1] or (dj == bd[M - 1] and j < bi[M - 1]):
                        q = M - 1
                        while q > 0 and (bd[q - 1] > dj or (bd[q - 1] == dj and bi[q - 1] > j)):
                            bd[q] = bd[q - 1]
                            bi[q] = bi[q - 1]
                            q -= 1
                        bd[q] = dj
                        bi[q] = j
            else:
                l = left[t]
                r = right[t]
                if box_lower_bound(X, i, lo, hi, l) <= box_lower_bound(X, i, lo, hi, r):
                    stack[top] = r
                    stack[top + 1] = l
                else:
                    stack[top] = l
                    stack[top + 1] = r
                top += 2
        nn_idx[i] = bi
        nn_dst[i] = bd
    return nn_idx, nn_dst


def knn_query(tree: KDTree, M: int):
    """Exact ``M`` nearest neighbours of every indexed point (self excluded).

    Ties in distance are resolved by ascending point index.
    """
    return _knn_query(tree.X, M, tree.perm, tree.start, tree.end, tree.left,
                      tree.right, tree.lo, tree.hi)
