"""Agglomerative cuts of a spanning tree: single linkage and Genie."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..dataset import Partition
from ._forest import forest_partition


def single_linkage_cut(tree, k) -> Partition:
    """Drop the ``k - 1`` heaviest tree edges (adjusted order)."""
    if not 1 <= k <= tree.n:
        raise ValueError(f"k must lie in [1, {tree.n}]")
    keep = np.zeros(tree.n_edges, dtype=bool)
    keep[: tree.n - k] = True
    return forest_partition(tree, keep)


def gini_index(sizes) -> float:
    """Normalised Gini index of cluster sizes.

    ``sum_{i<j} |c_i - c_j| / ((k - 1) * sum_i c_i)``; zero for a single
    cluster, approaching one under extreme inequality.
    """
    c = np.sort(np.asarray(sizes, dtype=np.float64))
    if c.size == 0:
        raise ValueError("gini_index of an empty sequence")
    if np.any(c < 1):
        raise ValueError("cluster sizes must be positive")
    k = c.size
    if k == 1:
        return 0.0
    # for sorted c, sum_{i<j} (c_j - c_i) = sum_j (2j - k + 1) c_j
    w = 2.0 * np.arange(k) - k + 1
    return float(np.dot(w, c) / ((k - 1) * c.sum()))


@dataclass(frozen=True)
class GenieParams:
    k: int
    G: float = 0.3
    M: int = 5

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError("k must be a positive integer")
        if not 0.0 <= self.G <= 1.0:
            raise ValueError("Gini threshold G must lie in [0, 1]")
        if int(self.M) != self.M or self.M < 1:
            raise ValueError("M must be a positive integer")


class GenieStep(NamedTuple):
    edge: int
    gini_before: float
    gated: bool


class _SizeStats:
    """Cluster-size histogram supporting O(#distinct sizes) Gini updates."""

    def __init__(self, n):
        self.hist = {1: n}
        self.n_clusters = n
        self.total = n
        self.absdiff = 0  # sum over cluster pairs of |c_i - c_j|
        self.min_size = 1

    def _spread(self, x):
        return sum(cnt * abs(x - s) for s, cnt in self.hist.items())

    def remove(self, x):
        self.hist[x] -= 1
        if not self.hist[x]:
            del self.hist[x]
        self.n_clusters -= 1
        self.absdiff -= self._spread(x)

    def add(self, x):
        self.absdiff += self._spread(x)
        self.hist[x] = self.hist.get(x, 0) + 1
        self.n_clusters += 1

    def gini(self):
        if self.n_clusters < 2:
            return 0.0
        return self.absdiff / ((self.n_clusters - 1) * self.total)

    def smallest(self):
        while self.min_size not in self.hist:
            self.min_size += 1  # merges never create a smaller cluster
        return self.min_size


def _genie_steps(tree, k, G):
    n = tree.n
    u, v = tree.u.tolist(), tree.v.tolist()
    parent = list(range(n))
    size = [1] * n
    version = [0] * n
    used = [False] * tree.n_edges
    # incident edge indices per cluster root; smaller index = lighter edge
    incident = [[] for _ in range(n)]
    for e in range(tree.n_edges):
        incident[u[e]].append(e)
        incident[v[e]].append(e)
    # per size: heap of (lightest incident edge, root, version)
    by_size = {1: [(incident[i][0], i, 0) for i in range(n)]}
    heapq.heapify(by_size[1])
    stats = _SizeStats(n)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    steps = []
    lightest = 0
    for _ in range(n - k):
        g = stats.gini()
        if g <= G:
            while used[lightest]:
                lightest += 1
            e, gated = lightest, False
        else:
            heap = by_size[stats.smallest()]
            while True:
                e, r, ver = heap[0]
                if parent[r] == r and version[r] == ver:
                    break
                heapq.heappop(heap)
            gated = True
        steps.append(GenieStep(e, g, gated))

        used[e] = True
        a, b = find(u[e]), find(v[e])
        if len(incident[a]) < len(incident[b]):
            a, b = b, a
        stats.remove(size[a])
        stats.remove(size[b])
        parent[b] = a
        size[a] += size[b]
        version[a] += 1
        ha = incident[a]
        for x in incident[b]:
            heapq.heappush(ha, x)
        incident[b] = []
        while ha and used[ha[0]]:
            heapq.heappop(ha)
        stats.add(size[a])
        if ha:
            heapq.heappush(by_size.setdefault(size[a], []), (ha[0], a, version[a]))
    return steps


def genie(tree, p: GenieParams, return_steps=False):
    """Gini-gated agglomeration along the tree edges.

    While the Gini index of the current cluster sizes is at most ``p.G``
    the lightest unused edge is merged; otherwise the lightest unused edge
    touching a smallest cluster is. With ``return_steps`` the merge log
    (edge index, Gini before the merge, whether the gate fired) is
    returned alongside the partition.
    """
    if tree.M != p.M:
        raise ValueError(f"tree was built with M={tree.M}, params ask for M={p.M}")
    if not 1 <= p.k <= tree.n:
        raise ValueError(f"k must lie in [1, {tree.n}]")
    steps = _genie_steps(tree, p.k, p.G)
    keep = np.zeros(tree.n_edges, dtype=bool)
    keep[[s.edge for s in steps]] = True
    part = forest_partition(tree, keep)
    return (part, steps) if return_steps else part
