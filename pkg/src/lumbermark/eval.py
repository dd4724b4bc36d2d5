"""Adjusted Rand index and benchmark-style aggregation."""

from __future__ import annotations

import json
import statistics
from dataclasses import asdict, dataclass

import numpy as np

from .dataset import Partition

BAD_BELOW = 0.8
GOOD_FROM = 0.95


def _labels(x):
    return np.asarray(x.labels if isinstance(x, Partition) else x, dtype=np.int64)


def _comb2(x):
    x = np.asarray(x, dtype=np.float64)
    return x * (x - 1.0) / 2.0


def adjusted_rand(a, b) -> float:
    """Hubert-Arabie adjusted Rand index between a labelling and a reference.

    Points whose *reference* label ``b`` is ``0`` (noise) are dropped before
    scoring; a ``0`` in ``a`` is an ordinary label. Symmetric whenever
    neither side carries noise.
    """
    a, b = _labels(a), _labels(b)
    if a.shape != b.shape:
        raise ValueError(f"label vectors differ in length ({a.size} vs {b.size})")
    keep = b != 0
    a, b = a[keep], b[keep]
    n = a.size
    if n < 2:
        raise ValueError("need at least 2 scorable points")
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    ai, bi = ai.ravel(), bi.ravel()
    table = np.zeros((ai.max() + 1, bi.max() + 1), dtype=np.int64)
    np.add.at(table, (ai, bi), 1)
    index = _comb2(table).sum()
    sa = _comb2(table.sum(axis=1)).sum()
    sb = _comb2(table.sum(axis=0)).sum()
    expected = sa * sb / _comb2(n)
    max_index = 0.5 * (sa + sb)
    if max_index == expected:
        # both sides trivial (all in one cluster or all singletons)
        return 1.0 if table.shape[0] == table.shape[1] == np.count_nonzero(table) else 0.0
    return float((index - expected) / (max_index - expected))


def best_ar(pred, refs) -> float:
    """Highest adjusted Rand index over alternative reference labellings."""
    refs = list(refs)
    if not refs:
        raise ValueError("at least one reference labelling is required")
    return max(adjusted_rand(pred, r) for r in refs)


@dataclass
class ScoreReport:
    per_dataset: dict
    n_bad: int
    n_good: int
    median: float
    mean: float

    @property
    def count(self) -> int:
        return len(self.per_dataset)

    def to_json(self, **kwargs) -> str:
        return json.dumps(asdict(self), **kwargs)

    def to_table(self) -> str:
        width = max([len("dataset")] + [len(k) for k in self.per_dataset])
        lines = [f"{'dataset':<{width}}  {'AR':>7}"]
        lines += [f"{name:<{width}}  {ar:7.4f}" for name, ar in self.per_dataset.items()]
        lines.append("-" * (width + 9))
        lines.append(f"{'<0.8':<{width}}  {self.n_bad:7d}")
        lines.append(f"{'>=0.95':<{width}}  {self.n_good:7d}")
        lines.append(f"{'median':<{width}}  {self.median:7.4f}")
        lines.append(f"{'mean':<{width}}  {self.mean:7.4f}")
        return "\n".join(lines)


def aggregate(per_dataset) -> ScoreReport:
    """Counts of bad (< 0.8) and good (>= 0.95) scores, median and mean."""
    per_dataset = dict(per_dataset)
    if not per_dataset:
        raise ValueError("nothing to aggregate")
    ars = [float(x) for x in per_dataset.values()]
    return ScoreReport(
        per_dataset=per_dataset,
        n_bad=sum(x < BAD_BELOW for x in ars),
        n_good=sum(x >= GOOD_FROM for x in ars),
        median=float(statistics.median(ars)),
        mean=float(statistics.fmean(ars)),
    )
