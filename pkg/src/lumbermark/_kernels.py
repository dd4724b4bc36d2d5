# Low-level jitted helpers shared by the neighbour search and MST kernels.
#
# Every distance in the package goes through either `dist` (scalar) or
# `pairwise_euclid` (vectorised); both accumulate squared coordinate
# differences in coordinate order and take one square root, so the two
# paths agree bit for bit. Exact-tie handling relies on that.

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def dist(X, i, j):
    acc = 0.0
    for c in range(X.shape[1]):
        t = X[i, c] - X[j, c]
        acc += t * t
    return np.sqrt(acc)


@njit(cache=True, inline="always")
def key_less(dm1, d1, a1, b1, dm2, d2, a2, b2):
    """Strict order on (mutual reachability, euclidean, min index, max index)."""
    if dm1 != dm2:
        return dm1 < dm2
    if d1 != d2:
        return d1 < d2
    if a1 != a2:
        return a1 < a2
    return b1 < b2


@njit(cache=True, inline="always")
def box_lower_bound(X, i, lo, hi, node):
    # Never exceeds dist(X, i, j) for any j inside the box: each term is a
    # monotone function of the same rounded coordinate difference.
    acc = 0.0
    for c in range(X.shape[1]):
        x = X[i, c]
        if x < lo[node, c]:
            t = lo[node, c] - x
            acc += t * t
        elif x > hi[node, c]:
            t = x - hi[node, c]
            acc += t * t
    return np.sqrt(acc)


def pairwise_euclid(X, rows=None):
    """Euclidean distances from ``X[rows]`` to all of ``X`` (numpy route)."""
    X = np.asarray(X, dtype=np.float64)
    A = X if rows is None else X[rows]
    acc = np.zeros((A.shape[0], X.shape[0]))
    for c in range(X.shape[1]):
        t = A[:, c, None] - X[None, :, c]
        acc += t * t
    return np.sqrt(acc)
