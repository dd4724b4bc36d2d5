"""Divisive clustering by chopping limbs off a spanning tree.

Edges are visited from the heaviest down. An edge is cut only if both
pieces it leaves behind in the leafless tree are at least
``min_cluster_size = f * |T'| / k`` vertices large, where ``T'`` is the
tree with its degree-one vertices dropped. The scan stops after ``k - 1``
cuts; the clusters are the components of the full tree minus the cuts,
so every leaf ends up with its only neighbour.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ..dataset import Partition
from ._forest import forest_partition

log = logging.getLogger(__name__)


class ClusteringError(RuntimeError):
    pass


@dataclass(frozen=True)
class LumbermarkParams:
    k: int
    f: float = 0.25
    M: int = 5
    leaf_removal: bool = True

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError("k must be a positive integer")
        if not 0.0 <= self.f <= 1.0:
            raise ValueError("min_cluster_factor f must lie in [0, 1]")
        if int(self.M) != self.M or self.M < 1:
            raise ValueError("M must be a positive integer")


@dataclass
class CutState:
    """Outcome of one successful cut loop plus bookkeeping for diagnostics.

    ``cut_edges`` lists tree edge indices (positions in the ascending edge
    order) in the order they were accepted. ``f`` and ``leaf_removal`` are
    the values that finally succeeded, which differ from the requested ones
    if the fallback kicked in. ``relabel_ops`` counts vertex visits done
    while relabelling components, ``scan_ops`` the edges examined.
    """

    leaf_mask: np.ndarray
    t_prime_size: int
    s: float
    cut_edges: list = field(default_factory=list)
    component_sizes: list = field(default_factory=list)
    f: float = 0.0
    leaf_removal: bool = True
    attempts: int = 0
    relabel_ops: int = 0
    scan_ops: int = 0

    @property
    def ops(self) -> int:
        return self.relabel_ops + self.scan_ops


def leaves(tree) -> np.ndarray:
    """Boolean mask of the degree-one vertices of ``tree``."""
    return tree.degrees() == 1


class _LeaflessForest:
    """Leafless subtree with per-edge side sizes kept current under cuts."""

    def __init__(self, tree, keep_vertex):
        n = tree.n
        self.u = tree.u.tolist()
        self.v = tree.v.tolist()
        self.usable = (keep_vertex[tree.u] & keep_vertex[tree.v]).tolist()
        self.adj = [[] for _ in range(n)]
        for e, ok in enumerate(self.usable):
            if ok:
                self.adj[self.u[e]].append((self.v[e], e))
                self.adj[self.v[e]].append((self.u[e], e))
        self.cut = [False] * len(self.u)
        self.comp = [-1] * n
        self.comp_size = []
        self.below = [0] * len(self.u)  # vertices on the far side from the DFS root
        self.ops = 0

    def relabel(self, root):
        """Give the component containing ``root`` a fresh id; recount sides."""
        cid = len(self.comp_size)
        adj, cut, comp, below = self.adj, self.cut, self.comp, self.below
        order = [root]
        up = {root: -1}
        comp[root] = cid
        i = 0
        while i < len(order):
            x = order[i]
            i += 1
            for y, e in adj[x]:
                if not cut[e] and comp[y] != cid:
                    comp[y] = cid
                    up[y] = e
                    order.append(y)
        sub = dict.fromkeys(order, 1)
        for x in reversed(order):
            e = up[x]
            if e >= 0:
                below[e] = sub[x]
                y = self.u[e] if self.v[e] == x else self.v[e]
                sub[y] += sub[x]
        self.ops += len(order)
        self.comp_size.append(len(order))
        return cid


def _cut_loop(tree, k, f, leaf_removal):
    n = tree.n
    leaf_mask = leaves(tree) if leaf_removal else np.zeros(n, dtype=bool)
    keep = ~leaf_mask
    t_size = int(keep.sum())
    s = f * t_size / k
    state = CutState(leaf_mask=leaf_mask, t_prime_size=t_size, s=s,
                     f=f, leaf_removal=leaf_removal)
    if k == 1:
        return state, True
    forest = _LeaflessForest(tree, keep)
    if t_size:
        forest.relabel(int(np.flatnonzero(keep)[0]))

    cuts = state.cut_edges
    for e in range(tree.n_edges - 1, -1, -1):
        if not forest.usable[e]:
            continue
        state.scan_ops += 1
        a = forest.below[e]
        b = forest.comp_size[forest.comp[forest.u[e]]] - a
        if a >= s and b >= s:
            forest.cut[e] = True
            cuts.append(e)
            forest.relabel(forest.u[e])
            forest.relabel(forest.v[e])
            if len(cuts) == k - 1:
                break
    state.relabel_ops = forest.ops
    live = sorted(set(forest.comp[x] for x in range(n) if keep[x]))
    state.component_sizes = [forest.comp_size[c] for c in live]
    return state, len(cuts) == k - 1


def lumbermark_cut(tree, p: LumbermarkParams) -> CutState:
    """Run the cut loop, restarting with a smaller factor if it falls short.

    ``f`` is halved until it drops below ``1/n`` (at which point the size
    gate admits every split); if even that cannot yield ``k - 1`` cuts,
    one more attempt is made with leaf removal disabled.
    """
    if tree.M != p.M:
        raise ValueError(f"tree was built with M={tree.M}, params ask for M={p.M}")
    if p.k > tree.n:
        raise ValueError(f"cannot form {p.k} clusters from {tree.n} points")
    f = p.f
    attempts = relabel = scan = 0
    plan = []
    while True:
        plan.append((f, p.leaf_removal))
        if f < 1.0 / tree.n:
            break
        f /= 2.0
    if p.leaf_removal:
        plan.append((f, False))
    for f, leaf_removal in plan:
        state, ok = _cut_loop(tree, p.k, f, leaf_removal)
        attempts += 1
        relabel += state.relabel_ops
        scan += state.scan_ops
        if ok:
            state.attempts = attempts
            state.relabel_ops = relabel
            state.scan_ops = scan
            if attempts > 1:
                log.info("lumbermark: needed %d attempts (f=%g, leaf_removal=%s)",
                         attempts, f, leaf_removal)
            return state
    raise ClusteringError(f"cannot produce {p.k} clusters")


def _partition_after(tree, cut_edges) -> Partition:
    keep = np.ones(tree.n_edges, dtype=bool)
    keep[list(cut_edges)] = False
    return forest_partition(tree, keep)


def lumbermark(tree, p: LumbermarkParams) -> Partition:
    """Split ``tree`` into exactly ``p.k`` clusters.

    Parameters
    ----------
    tree : SpanningTree
        Mutual reachability MST built with smoothing parameter ``p.M``.
    p : LumbermarkParams
        ``k`` (n_clusters), ``f`` (min_cluster_factor), ``M`` and whether
        leaves are excluded from cut candidacy and size accounting.

    Returns
    -------
    Partition
        Labels ``1..k``, numbered by smallest member index; no noise.
    """
    return _partition_after(tree, lumbermark_cut(tree, p).cut_edges)


def lumbermark_trace(tree, p: LumbermarkParams) -> list[Partition]:
    """Partitions after 0, 1, ..., k-1 accepted cuts (a refinement chain)."""
    cuts = lumbermark_cut(tree, p).cut_edges
    return [_partition_after(tree, cuts[:j]) for j in range(p.k)]
