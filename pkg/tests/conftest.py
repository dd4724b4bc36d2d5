import itertools
import math

import numpy as np
import pytest


def random_points(rng, n, d, ties=False):
    X = rng.random((n, d))
    if ties:
        # coarse grid: many exactly equal distances and some duplicate points
        X = np.round(X * 4) / 4
    return X


def random_instance(rng, n_range, d_range, M_choices, ties=False):
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    d = int(rng.integers(d_range[0], d_range[1] + 1))
    M = int(min(rng.choice(M_choices), n - 1))
    return random_points(rng, n, d, ties=ties), M


def brute_core(X, M):
    """Core distances by plain enumeration (independent of the package)."""
    X = np.asarray(X, dtype=float).reshape(len(X), -1)
    out = []
    for i in range(len(X)):
        ds = sorted(math.dist(X[i], X[j]) for j in range(len(X)) if j != i)
        out.append(ds[M - 1])
    return np.array(out)


def pair_counting_ari(a, b):
    """ARI from the four pair counts, O(n^2); no contingency table."""
    n11 = n10 = n01 = n00 = 0
    for i, j in itertools.combinations(range(len(a)), 2):
        sa, sb = a[i] == a[j], b[i] == b[j]
        if sa and sb:
            n11 += 1
        elif sa:
            n10 += 1
        elif sb:
            n01 += 1
        else:
            n00 += 1
    num = 2.0 * (n00 * n11 - n01 * n10)
    den = (n00 + n01) * (n01 + n11) + (n00 + n10) * (n10 + n11)
    return num / den


def is_refinement(fine, coarse):
    """Every block of ``fine`` lies inside a single block of ``coarse``."""
    seen = {}
    for x, y in zip(np.asarray(fine).tolist(), np.asarray(coarse).tolist()):
        if seen.setdefault(x, y) != y:
            return False
    return True


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
