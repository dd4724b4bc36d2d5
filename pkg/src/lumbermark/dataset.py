"""Point and label containers, plain-text I/O and synthetic data."""

from __future__ import annotations

import os
import re
from dataclasses import dataclass

import numpy as np


class ParseError(ValueError):
    """Malformed points or labels file."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where += f"{path}"
        if line is not None:
            where += f":{line}"
        super().__init__(f"{where}: {message}" if where else message)


@dataclass(frozen=True, eq=False)
class PointSet:
    """``n`` points in ``R^d`` stored as a C-contiguous float64 matrix."""

    points: np.ndarray

    def __post_init__(self):
        X = np.ascontiguousarray(self.points, dtype=np.float64)
        if X.ndim == 1:
            X = X.reshape(-1, 1)
        if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
            raise ValueError("points must form a nonempty n x d matrix")
        if not np.all(np.isfinite(X)):
            raise ValueError("points must be finite")
        X.setflags(write=False)
        object.__setattr__(self, "points", X)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return self.n


@dataclass(frozen=True, eq=False)
class Partition:
    """Per-point cluster labels; ``0`` marks noise, clusters are ``1..k``."""

    labels: np.ndarray

    def __post_init__(self):
        y = np.asarray(self.labels)
        if y.ndim != 1:
            raise ValueError("labels must be a 1-d sequence")
        if y.size and not np.issubdtype(y.dtype, np.integer):
            if not np.all(np.equal(np.mod(y, 1), 0)):
                raise ValueError("labels must be integers")
        y = y.astype(np.int64)
        if y.size and y.min() < 0:
            raise ValueError("labels must be nonnegative")
        present = np.unique(y[y > 0])
        if present.size and not np.array_equal(present, np.arange(1, present.size + 1)):
            raise ValueError("nonzero labels must be contiguous 1..k; use Partition.from_raw")
        y.setflags(write=False)
        object.__setattr__(self, "labels", y)

    @classmethod
    def from_raw(cls, raw, noise=None) -> "Partition":
        """Renumber arbitrary labels to ``1..k`` by first occurrence.

        ``noise`` is an optional boolean mask of points mapped to ``0``.
        """
        raw = np.asarray(raw)
        if noise is None:
            noise = np.zeros(raw.shape, dtype=bool)
        noise = np.asarray(noise, dtype=bool)
        out = np.zeros(raw.shape[0], dtype=np.int64)
        keep = ~noise
        if keep.any():
            vals, first, inv = np.unique(raw[keep], return_index=True, return_inverse=True)
            rank = np.empty(vals.size, dtype=np.int64)
            rank[np.argsort(first, kind="stable")] = np.arange(1, vals.size + 1)
            out[keep] = rank[inv.ravel()]
        return cls(out)

    @property
    def n(self) -> int:
        return self.labels.shape[0]

    @property
    def k(self) -> int:
        return int(self.labels.max()) if self.labels.size else 0

    @property
    def noise(self) -> np.ndarray:
        return self.labels == 0

    def sizes(self) -> np.ndarray:
        """Sizes of clusters ``1..k`` (noise excluded)."""
        return np.bincount(self.labels, minlength=self.k + 1)[1:]

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self.labels, other.labels)

    __hash__ = None


def as_pointset(X) -> PointSet:
    return X if isinstance(X, PointSet) else PointSet(np.asarray(X, dtype=np.float64))


def same_partition(a, b) -> bool:
    """True when two labellings induce the same set partition and noise set."""
    a = np.asarray(a.labels if isinstance(a, Partition) else a)
    b = np.asarray(b.labels if isinstance(b, Partition) else b)
    if a.shape != b.shape:
        return False
    if not np.array_equal(a == 0, b == 0):
        return False
    return Partition.from_raw(a, a == 0) == Partition.from_raw(b, b == 0)


def _data_lines(path):
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            yield lineno, s


def _split(s, delimiter):
    if delimiter is None:
        return s.split()
    return [t.strip() for t in s.split(delimiter)]


def load_points(path, delimiter="auto") -> PointSet:
    """Read a delimited text matrix, one point per line.

    Parameters
    ----------
    path : str or os.PathLike
        Input file. Blank lines and lines starting with ``#`` are skipped.
    delimiter : {"auto"} or str or None
        ``"auto"`` picks a comma if the first data line has one and
        whitespace otherwise; ``None`` forces whitespace.

    Raises
    ------
    ParseError
        On ragged rows, non-numeric tokens or an empty file.
    """
    rows = []
    d = None
    for lineno, s in _data_lines(path):
        if delimiter == "auto":
            delimiter = "," if "," in s else None
        tokens = _split(s, delimiter)
        try:
            row = [float(t) for t in tokens]
        except ValueError:
            raise ParseError(f"non-numeric token in {s!r}", path, lineno) from None
        if d is None:
            d = len(row)
        elif len(row) != d:
            raise ParseError(f"expected {d} values, got {len(row)}", path, lineno)
        if not all(np.isfinite(row)):
            raise ParseError("non-finite value", path, lineno)
        rows.append(row)
    if not rows:
        raise ParseError("no data rows", path)
    return PointSet(np.array(rows, dtype=np.float64))


def load_labels(path, n=None) -> Partition:
    """Read one nonnegative integer label per line and renumber to ``1..k``.

    ``0`` stays noise. If ``n`` is given the label count must match it.
    """
    labels = []
    for lineno, s in _data_lines(path):
        tokens = s.split()
        if len(tokens) != 1:
            raise ParseError(f"expected one label, got {len(tokens)} tokens", path, lineno)
        try:
            value = int(tokens[0])
        except ValueError:
            raise ParseError(f"non-integer label {tokens[0]!r}", path, lineno) from None
        if value < 0:
            raise ParseError(f"negative label {value}", path, lineno)
        labels.append(value)
    if not labels:
        raise ParseError("no labels", path)
    if n is not None and len(labels) != n:
        raise ParseError(f"{len(labels)} labels for {n} points", path)
    raw = np.array(labels, dtype=np.int64)
    return Partition.from_raw(raw, raw == 0)


def save_points(path, ps) -> None:
    ps = as_pointset(ps)
    with open(path, "w", encoding="utf-8") as fh:
        for row in ps.points:
            fh.write(" ".join(repr(float(x)) for x in row))
            fh.write("\n")


def save_labels(path, part) -> None:
    labels = part.labels if isinstance(part, Partition) else np.asarray(part)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("".join(f"{int(y)}\n" for y in labels))


def make_blobs(k, sizes, centers, sigma, seed):
    """Isotropic Gaussian blobs with reference labels ``1..k``.

    Returns ``(PointSet, Partition)``; blob ``j`` occupies a contiguous
    block of rows, in order.
    """
    centers = np.asarray(centers, dtype=np.float64)
    if centers.ndim == 1:
        centers = centers.reshape(-1, 1)
    if len(sizes) != k or centers.shape[0] != k:
        raise ValueError("sizes and centers must both have length k")
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    rng = np.random.default_rng(seed)
    d = centers.shape[1]
    blocks = [c + sigma * rng.standard_normal((int(m), d)) for c, m in zip(centers, sizes)]
    labels = np.repeat(np.arange(1, k + 1), [int(m) for m in sizes])
    return PointSet(np.vstack(blocks)), Partition(labels)


def jitter(ps, eps=None, seed=None) -> PointSet:
    """Add uniform noise in ``[-eps, eps]`` to every coordinate.

    The default ``eps`` is ``1e-9`` times the data range, which is enough
    to break exact distance ties without moving any point visibly.
    """
    ps = as_pointset(ps)
    if eps is None:
        span = float(np.ptp(ps.points)) or 1.0
        eps = 1e-9 * span
    rng = np.random.default_rng(seed)
    return PointSet(ps.points + rng.uniform(-eps, eps, size=ps.points.shape))


def find_datasets(directory):
    """Map dataset name to ``(points_path, [labels_paths])`` in a directory.

    Files follow ``<name>.data.csv`` and ``<name>.labels<i>.csv``; the
    ``.txt`` extension or no extension is accepted too.
    """
    data_re = re.compile(r"^(?P<name>.+)\.data(?:\.csv|\.txt)?$")
    lab_re = re.compile(r"^(?P<name>.+)\.labels(?P<i>\d+)(?:\.csv|\.txt)?$")
    data, labels = {}, {}
    for fname in sorted(os.listdir(directory)):
        full = os.path.join(directory, fname)
        if not os.path.isfile(full):
            continue
        m = data_re.match(fname)
        if m:
            data[m["name"]] = full
            continue
        m = lab_re.match(fname)
        if m:
            labels.setdefault(m["name"], []).append((int(m["i"]), full))
    return {
        name: (path, [p for _, p in sorted(labels.get(name, []))])
        for name, path in sorted(data.items())
    }
