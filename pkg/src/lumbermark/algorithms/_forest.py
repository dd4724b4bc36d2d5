import numpy as np

from ..dataset import Partition
from ..unionfind import components


def forest_partition(tree, keep, singletons_as_noise=False) -> Partition:
    """Components of the tree restricted to edges with ``keep[e]`` true."""
    keep = np.asarray(keep, dtype=bool)
    roots = components(tree.n, tree.u[keep], tree.v[keep])
    if not singletons_as_noise:
        return Partition.from_raw(roots)
    counts = np.bincount(roots, minlength=tree.n)
    return Partition.from_raw(roots, counts[roots] == 1)
