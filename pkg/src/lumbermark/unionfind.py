import numpy as np


class UnionFind:
    """Disjoint sets over ``0..n-1`` with path halving and union by size."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n
        self.n_sets = n

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y):
        """Merge the sets of ``x`` and ``y``; False if already joined."""
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]
        self.n_sets -= 1
        return True

    def roots(self):
        return np.array([self.find(i) for i in range(len(self.parent))], dtype=np.int64)


def components(n, u, v):
    """Connected component ids of the graph on ``0..n-1`` with edges ``(u, v)``."""
    uf = UnionFind(n)
    for a, b in zip(np.asarray(u).tolist(), np.asarray(v).tolist()):
        uf.union(a, b)
    return uf.roots()
