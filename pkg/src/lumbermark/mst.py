"""Minimum spanning trees of the complete mutual reachability graph.

All constructors order candidate edges by the strict total order

    (d_M(i, j), d(i, j), min(i, j), max(i, j))

compared lexicographically. Under it every pair is distinct, so the
minimum spanning tree is unique and the constructors below must agree
edge for edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numba import njit

from ._kernels import box_lower_bound, dist, key_less, pairwise_euclid
from .dataset import as_pointset
from .kdtree import build_kdtree
from .neighbors import NeighborGraph, knn
from .unionfind import UnionFind


class TreeEdge(NamedTuple):
    u: int
    v: int
    w_mutreach: float
    w_euclid: float


@dataclass(frozen=True, eq=False)
class SpanningTree:
    """``n - 1`` edges sorted ascending by the adjusted order.

    Stored column-wise: ``u < v`` elementwise, ``w_mutreach`` holds the raw
    mutual reachability weights and ``w_euclid`` the Euclidean ones.
    """

    n: int
    M: int
    u: np.ndarray
    v: np.ndarray
    w_mutreach: np.ndarray
    w_euclid: np.ndarray

    @classmethod
    def from_edges(cls, n, M, u, v, w_mutreach, w_euclid):
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        a, b = np.minimum(u, v), np.maximum(u, v)
        wm = np.asarray(w_mutreach, dtype=np.float64)
        we = np.asarray(w_euclid, dtype=np.float64)
        order = np.lexsort((b, a, we, wm))
        cols = [np.ascontiguousarray(c[order]) for c in (a, b, wm, we)]
        for c in cols:
            c.setflags(write=False)
        return cls(int(n), int(M), *cols)

    @property
    def n_edges(self) -> int:
        return self.u.shape[0]

    @property
    def edges(self) -> list[TreeEdge]:
        return [TreeEdge(int(a), int(b), float(w), float(e))
                for a, b, w, e in zip(self.u, self.v, self.w_mutreach, self.w_euclid)]

    def edge_set(self) -> set[tuple[int, int]]:
        return set(zip(self.u.tolist(), self.v.tolist()))

    def degrees(self) -> np.ndarray:
        return np.bincount(np.concatenate([self.u, self.v]), minlength=self.n)

    def total_weight(self) -> float:
        return float(np.sum(self.w_mutreach))

    def dumps(self) -> str:
        """One ``u v w_mutreach w_euclid`` line per edge, full precision."""
        return "".join(f"{a} {b} {w!r} {e!r}\n" for a, b, w, e in self.edges)


def _check(ps, ng):
    ps = as_pointset(ps)
    if ps.n < 2:
        raise ValueError("a spanning tree needs at least 2 points")
    if ng.n != ps.n:
        raise ValueError("neighbour graph does not match the point set")
    return ps


@njit(cache=True)
def _prim(X, core):
    n = X.shape[0]
    in_tree = np.zeros(n, dtype=np.bool_)
    best_dm = np.full(n, np.inf)
    best_d = np.full(n, np.inf)
    best_from = np.full(n, -1, dtype=np.int64)
    eu = np.empty(n - 1, dtype=np.int64)
    ev = np.empty(n - 1, dtype=np.int64)
    edm = np.empty(n - 1)
    ed = np.empty(n - 1)
    cur = 0
    in_tree[0] = True
    for step in range(n - 1):
        for v in range(n):
            if in_tree[v]:
                continue
            d = dist(X, cur, v)
            dm = max(d, core[cur], core[v])
            a, b = min(cur, v), max(cur, v)
            f = best_from[v]
            if f < 0 or key_less(dm, d, a, b, best_dm[v], best_d[v], min(f, v), max(f, v)):
                best_dm[v] = dm
                best_d[v] = d
                best_from[v] = cur
        nxt = -1
        for v in range(n):
            if in_tree[v]:
                continue
            if nxt < 0:
                nxt = v
                continue
            f, g = best_from[v], best_from[nxt]
            if key_less(best_dm[v], best_d[v], min(f, v), max(f, v),
                        best_dm[nxt], best_d[nxt], min(g, nxt), max(g, nxt)):
                nxt = v
        in_tree[nxt] = True
        eu[step] = best_from[nxt]
        ev[step] = nxt
        edm[step] = best_dm[nxt]
        ed[step] = best_d[nxt]
        cur = nxt
    return eu, ev, edm, ed


def mst_prim(ps, ng: NeighborGraph) -> SpanningTree:
    """Dense O(n^2) Prim; the reference constructor."""
    ps = _check(ps, ng)
    u, v, wm, we = _prim(ps.points, ng.core)
    return SpanningTree.from_edges(ps.n, ng.M, u, v, wm, we)


def mst_kruskal_oracle(ps, ng: NeighborGraph) -> SpanningTree:
    """Kruskal over all ``n(n-1)/2`` sorted pairs; slow, for cross-checks."""
    ps = _check(ps, ng)
    n = ps.n
    D = pairwise_euclid(ps.points)
    iu, ju = np.triu_indices(n, k=1)
    d = D[iu, ju]
    dm = np.maximum(d, np.maximum(ng.core[iu], ng.core[ju]))
    order = np.lexsort((ju, iu, d, dm))
    uf = UnionFind(n)
    picked = []
    for e in order.tolist():
        if uf.union(int(iu[e]), int(ju[e])):
            picked.append(e)
            if len(picked) == n - 1:
                break
    picked = np.array(picked, dtype=np.int64)
    return SpanningTree.from_edges(n, ng.M, iu[picked], ju[picked], dm[picked], d[picked])


@njit(cache=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nx = parent[x]
        parent[x] = root
        x = nx
    return root


@njit(cache=True)
def _boruvka(X, core, perm, start, end, left, right, lo, hi):
    n = X.shape[0]
    n_nodes = start.shape[0]
    parent = np.arange(n)
    comp = np.arange(n)
    node_comp = np.empty(n_nodes, dtype=np.int64)
    node_mincore = np.empty(n_nodes)
    for t in range(n_nodes - 1, -1, -1):
        if left[t] < 0:
            m = np.inf
            for p in range(start[t], end[t]):
                m = min(m, core[perm[p]])
            node_mincore[t] = m
        else:
            node_mincore[t] = min(node_mincore[left[t]], node_mincore[right[t]])

    eu = np.empty(n - 1, dtype=np.int64)
    ev = np.empty(n - 1, dtype=np.int64)
    edm = np.empty(n - 1)
    ed = np.empty(n - 1)
    n_edges = 0

    best_dm = np.empty(n)
    best_d = np.empty(n)
    best_a = np.empty(n, dtype=np.int64)
    best_b = np.empty(n, dtype=np.int64)
    stack = np.empty(n_nodes + 1, dtype=np.int64)

    while n_edges < n - 1:
        for i in range(n):
            comp[i] = _find(parent, i)
        # a node is "pure" when all its points share one component
        for t in range(n_nodes - 1, -1, -1):
            if left[t] < 0:
                c = comp[perm[start[t]]]
                for p in range(start[t] + 1, end[t]):
                    if comp[perm[p]] != c:
                        c = -1
                        break
                node_comp[t] = c
            else:
                cl = node_comp[left[t]]
                node_comp[t] = cl if cl == node_comp[right[t]] else -1
        for i in range(n):
            best_dm[i] = np.inf
            best_d[i] = np.inf
            best_a[i] = n
            best_b[i] = n

        for i in range(n):
            c = comp[i]
            ci = core[i]
            if ci > best_dm[c]:
                continue
            stack[0] = 0
            top = 1
            while top > 0:
                top -= 1
                t = stack[top]
                if node_comp[t] == c:
                    continue
                lb = box_lower_bound(X, i, lo, hi, t)
                lbm = max(lb, ci, node_mincore[t])
                if lbm > best_dm[c] or (lbm == best_dm[c] and lb > best_d[c]):
                    continue
                if left[t] < 0:
                    for p in range(start[t], end[t]):
                        j = perm[p]
                        if comp[j] == c:
                            continue
                        d = dist(X, i, j)
                        dm = max(d, ci, core[j])
                        a, b = min(i, j), max(i, j)
                        if key_less(dm, d, a, b, best_dm[c], best_d[c], best_a[c], best_b[c]):
                            best_dm[c] = dm
                            best_d[c] = d
                            best_a[c] = a
                            best_b[c] = b
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

        for c in range(n):
            if comp[c] != c or best_a[c] >= n:
                continue
            a, b = best_a[c], best_b[c]
            ra, rb = _find(parent, a), _find(parent, b)
            if ra == rb:
                continue  # the same edge was chosen by both of its components
            parent[ra] = rb
            eu[n_edges] = a
            ev[n_edges] = b
            edm[n_edges] = best_dm[c]
            ed[n_edges] = best_d[c]
            n_edges += 1
    return eu, ev, edm, ed


def mst_boruvka_spatial(ps, ng: NeighborGraph, leaf_size=16) -> SpanningTree:
    """Single-tree Borůvka with K-d tree pruning; the fast path for small d."""
    ps = _check(ps, ng)
    tree = build_kdtree(ps.points, leaf_size=leaf_size)
    u, v, wm, we = _boruvka(tree.X, ng.core, tree.perm, tree.start, tree.end,
                            tree.left, tree.right, tree.lo, tree.hi)
    return SpanningTree.from_edges(ps.n, ng.M, u, v, wm, we)


MST_METHODS = {
    "prim": mst_prim,
    "boruvka": mst_boruvka_spatial,
    "kruskal": mst_kruskal_oracle,
}


def mst(ps, ng: NeighborGraph, method="auto") -> SpanningTree:
    ps = as_pointset(ps)
    if method == "auto":
        method = "boruvka" if ps.d <= 6 else "prim"
    try:
        fn = MST_METHODS[method]
    except KeyError:
        raise ValueError(f"unknown MST method {method!r}") from None
    return fn(ps, ng)


def build_tree(X, M=5, method="auto", knn_method="auto"):
    """kNN graph plus mutual reachability MST for raw points.

    Returns ``(NeighborGraph, SpanningTree)``.
    """
    ps = as_pointset(X)
    ng = knn(ps, M, method=knn_method)
    return ng, mst(ps, ng, method=method)
