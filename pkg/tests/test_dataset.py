import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lumbermark.dataset import (
    ParseError,
    Partition,
    PointSet,
    find_datasets,
    jitter,
    load_labels,
    load_points,
    make_blobs,
    same_partition,
    save_labels,
    save_points,
)


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_load_points_whitespace(tmp_path):
    ps = load_points(_write(tmp_path, "a.txt", "0 0\n1 0\n"))
    assert (ps.n, ps.d) == (2, 2)
    np.testing.assert_array_equal(ps.points, [[0, 0], [1, 0]])


def test_load_points_comma_autodetect(tmp_path):
    ps = load_points(_write(tmp_path, "a.csv", "1,2\n3,4\n5,6\n"))
    assert (ps.n, ps.d) == (3, 2)
    assert ps.points[2, 1] == 6


def test_load_points_skips_comments_and_blanks(tmp_path):
    ps = load_points(_write(tmp_path, "a.txt", "# header\n\n1 2\n  \n3 4\n"))
    assert ps.n == 2


def test_ragged_row_names_line(tmp_path):
    with pytest.raises(ParseError) as exc:
        load_points(_write(tmp_path, "a.txt", "1 2\n3\n"))
    assert exc.value.line == 2


def test_non_numeric_token(tmp_path):
    with pytest.raises(ParseError):
        load_points(_write(tmp_path, "a.txt", "1 2\n3 x\n"))


def test_empty_points_file(tmp_path):
    with pytest.raises(ParseError):
        load_points(_write(tmp_path, "a.txt", "# nothing\n"))


def test_load_labels_plain(tmp_path):
    part = load_labels(_write(tmp_path, "l.txt", "1\n1\n2\n"))
    assert part.labels.tolist() == [1, 1, 2]
    assert part.k == 2


def test_load_labels_renumbers_keeping_noise(tmp_path):
    part = load_labels(_write(tmp_path, "l.txt", "0\n3\n3\n7\n"))
    assert part.labels.tolist() == [0, 1, 1, 2]
    assert part.k == 2


@pytest.mark.parametrize("text", ["-1\n", "1.5\n", "a\n", ""])
def test_load_labels_rejects(tmp_path, text):
    with pytest.raises(ParseError):
        load_labels(_write(tmp_path, "l.txt", text))


def test_load_labels_count_mismatch(tmp_path):
    with pytest.raises(ParseError):
        load_labels(_write(tmp_path, "l.txt", "1\n2\n"), n=3)


def test_points_round_trip(tmp_path, rng):
    X = rng.standard_normal((50, 3)) * 1e3
    p = tmp_path / "x.txt"
    save_points(p, X)
    np.testing.assert_array_equal(load_points(p).points, X)


def test_labels_round_trip(tmp_path):
    p = tmp_path / "y.txt"
    save_labels(p, Partition([0, 1, 2, 2, 1]))
    assert load_labels(p).labels.tolist() == [0, 1, 2, 2, 1]


@given(st.lists(st.integers(0, 6), min_size=1, max_size=40))
def test_renumbering_is_idempotent(raw):
    raw = np.array(raw)
    once = Partition.from_raw(raw, raw == 0)
    twice = Partition.from_raw(once.labels, once.labels == 0)
    assert once == twice
    nz = once.labels[once.labels > 0]
    if nz.size:
        assert set(nz.tolist()) == set(range(1, once.k + 1))


def test_partition_rejects_gaps():
    with pytest.raises(ValueError):
        Partition([1, 3])


def test_pointset_rejects_nonfinite():
    with pytest.raises(ValueError):
        PointSet(np.array([[0.0], [np.nan]]))


def test_make_blobs_single():
    ps, ref = make_blobs(1, [3], [(0, 0)], 0.1, seed=7)
    assert ps.n == 3
    assert ref.labels.tolist() == [1, 1, 1]
    assert np.all(np.abs(ps.points) < 1.0)


def test_make_blobs_deterministic():
    a, _ = make_blobs(2, [10, 5], [(0, 0), (3, 3)], 0.5, seed=7)
    b, _ = make_blobs(2, [10, 5], [(0, 0), (3, 3)], 0.5, seed=7)
    np.testing.assert_array_equal(a.points, b.points)


def test_make_blobs_separation():
    centers = [(0, 0), (5, 0), (2.5, 5 * np.sqrt(3) / 2)]
    ps, ref = make_blobs(3, [500, 500, 500], centers, 0.1, seed=7)
    X, y = ps.points, ref.labels
    sep = min(
        np.min(np.linalg.norm(X[y == a][:, None] - X[y == b][None], axis=2))
        for a, b in [(1, 2), (1, 3), (2, 3)]
    )
    assert sep > 10 * 0.1


def test_make_blobs_length_mismatch():
    with pytest.raises(ValueError):
        make_blobs(2, [3], [(0, 0), (1, 1)], 0.1, seed=0)


def test_jitter_small_and_seeded(rng):
    X = rng.random((20, 2))
    a, b = jitter(X, seed=3), jitter(X, seed=3)
    np.testing.assert_array_equal(a.points, b.points)
    assert np.max(np.abs(a.points - X)) <= 1e-9 * np.ptp(X)
    assert not np.array_equal(a.points, X)


def test_same_partition():
    assert same_partition([1, 1, 2, 0], [2, 2, 1, 0])
    assert not same_partition([1, 1, 2, 0], [1, 1, 2, 2])
    assert not same_partition([1, 2, 2], [1, 1, 2])


def test_find_datasets(tmp_path):
    for f in ["a.data.csv", "a.labels0.csv", "a.labels1.csv", "b.data.txt", "c.labels0.csv"]:
        (tmp_path / f).write_text("1\n")
    found = find_datasets(tmp_path)
    assert sorted(found) == ["a", "b"]
    assert [p.endswith(s) for p, s in zip(found["a"][1], ["labels0.csv", "labels1.csv"])] == [True, True]
    assert found["b"][1] == []
