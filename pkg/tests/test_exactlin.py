from __future__ import annotations

import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from skewberger.exactlin import (
    I,
    DimensionError,
    Echelon,
    Gaussian,
    Mat,
    det,
    in_span,
    inverse,
    kernel,
    nullspace,
    parse_scalar,
    format_scalar,
    rank,
    rank_mod_p,
    scalar,
    span_dim,
    span_equal,
)

small = st.integers(min_value=-3, max_value=3)


def matrices(max_rows=5, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_kernel_examples():
    assert kernel([[1, 0], [0, 0]]) == [(0, 1)]
    assert kernel([[1, 0], [0, 1]]) == []
    (v,) = kernel([[1, 1]])
    assert span_equal([v], [(1, -1)])


def test_span_examples():
    assert span_equal([(1, 0)], [(2, 0)])
    assert not span_equal([(1, 0), (0, 1)], [(1, 1)])
    assert in_span((1, 1), [(1, 0), (0, 1)])
    assert not in_span((1, 1), [(1, 0)])


def test_length_mismatch_raises():
    with pytest.raises(DimensionError):
        span_dim([(1, 0), (1, 0, 0)])
    with pytest.raises(DimensionError):
        in_span((1, 0, 0), [(1, 0)])


def test_gaussian_arithmetic_is_exact():
    z = Gaussian(1, 2)
    assert z * z == scalar(-3, 4)
    assert I * I == -1 and isinstance(I * I, type(mpq(1)))
    assert (z / z) == 1
    assert parse_scalar(format_scalar(scalar(mpq(3, 7), mpq(-5, 2)))) == scalar(mpq(3, 7), mpq(-5, 2))


def test_gaussian_kernel():
    # [[1, i]] has kernel spanned by (-i, 1)
    (v,) = kernel(Mat.from_dense([[1, I]]))
    assert v[0] * 1 + v[1] * I == 0


@given(matrices())
def test_kernel_annihilates_and_rank_nullity(rows):
    m = Mat.from_dense(rows)
    ker = kernel(m)
    for v in ker:
        assert all(sum(r[j] * v[j] for j in range(len(v))) == 0 for r in rows)
    assert rank(m) + len(ker) == m.cols
    # entries are tiny, so no minor can vanish modulo the large prime
    assert rank_mod_p(m.rows_sparse(), m.cols) == rank(m)


@given(matrices(), st.integers(0, 2**32))
def test_span_dim_invariant_under_recombination(rows, seed):
    rnd = random.Random(seed)
    n = len(rows[0])
    perm = rows[:]
    rnd.shuffle(perm)
    assert span_dim(perm) == span_dim(rows)
    k = len(rows)
    while True:
        p = Mat.from_dense([[rnd.randint(-2, 2) for _ in range(k)] for _ in range(k)])
        if det(p):
            break
    mixed = [tuple(sum(p.entries.get((i, j), 0) * rows[j][c] for j in range(k)) for c in range(n)) for i in range(k)]
    assert span_dim(mixed) == span_dim(rows)
    assert span_equal(mixed, rows)


@given(matrices(4, 4))
def test_nullspace_is_canonical(rows):
    """Reduced echelon output does not depend on row order."""
    n = len(rows[0])
    a = nullspace(rows, n)
    b = nullspace(list(reversed(rows)), n)
    assert a == b


@settings(max_examples=30)
@given(st.integers(1, 4), st.integers(0, 2**32))
def test_inverse(n, seed):
    rnd = random.Random(seed)
    while True:
        m = Mat.from_dense([[rnd.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        if det(m):
            break
    assert (m @ inverse(m)) == Mat.identity(n)


def test_echelon_express_tracks_combination():
    e = Echelon(3, track=True)
    e.add((1, 1, 0))
    e.add((0, 1, 1))
    combo = e.express((1, 2, 1))
    assert combo is not None
    assert e.express((0, 0, 1)) is None


def test_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("SKEWBERGER_CACHE", str(tmp_path))
    rows = [[1, 2, 3], [2, 4, 6]]
    first = nullspace(rows, 3)
    assert list(tmp_path.iterdir())
    assert nullspace(rows, 3) == first


def test_randomized_large_sparse_rank():
    rnd = random.Random(7)
    rows = [{rnd.randrange(200): rnd.randint(1, 5) for _ in range(3)} for _ in range(150)]
    e = Echelon(200)
    for r in rows:
        e.add(r)
    assert e.rank + len(nullspace(rows, 200)) == 200
