from __future__ import annotations

from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from msrcodes.construct_r3 import matrix_A_r3
from msrcodes.gf import field_of_order, make_field
from msrcodes.linalg import (
    DimensionMismatch,
    Mat,
    Singular,
    image_mul,
    intersection_dim,
    invert,
    is_unit_vector_basis,
    mat_pow,
    rank,
    span,
    subspace_sum,
    unit_vector,
)

F7 = make_field(7)


def e(i, n=4, f=F7):
    return unit_vector(f, n, i)


def brute_span(f, rows):
    """All vectors in the row span, by enumerating coefficient tuples."""
    rows = np.asarray(rows)
    out = set()
    for coeffs in product(range(f.q), repeat=len(rows)):
        v = np.zeros(rows.shape[1], dtype=np.int64)
        for c, r in zip(coeffs, rows):
            v = f.add(v, f.mul(r, c))
        out.add(tuple(int(x) for x in v))
    return out


def test_identity_product():
    m = Mat(F7, [[1, 2], [3, 4]])
    assert Mat.identity(F7, 2) @ m == m


def test_companion_cube_is_identity():
    a = matrix_A_r3(F7, 3)
    assert mat_pow(a, 3) == Mat.identity(F7, 3)
    assert mat_pow(a, 0) == Mat.identity(F7, 3)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        Mat(F7, np.ones((2, 3))) @ Mat(F7, np.ones((2, 2)))
    with pytest.raises(DimensionMismatch):
        Mat(F7, np.ones((2, 3))) + Mat(F7, np.ones((3, 2)))


def test_invert_examples():
    assert invert(Mat.identity(F7, 3)) == Mat.identity(F7, 3)
    assert invert(Mat(F7, [[0, 2], [2, 0]])) == Mat(F7, [[0, 4], [4, 0]])
    with pytest.raises(Singular):
        invert(Mat.zeros(F7, 2, 2))


def test_rank_examples():
    assert rank(Mat.identity(F7, 5)) == 5
    assert rank(Mat(F7, np.ones((3, 3)))) == 1


def _random_invertible(f, n, rng):
    while True:
        p = Mat(f, rng.integers(0, f.q, (n, n)))
        if rank(p) == n:
            return p


@pytest.mark.parametrize("q", [2, 7, 16])
def test_conjugate_rank(q):
    f = field_of_order(q)
    rng = np.random.default_rng(q)
    p = _random_invertible(f, 6, rng)
    a = Mat(f, np.diag(rng.integers(1, q, 6)))
    b = invert(p) @ a @ p
    assert rank(b) == 6
    assert invert(b) @ b == Mat.identity(f, 6)


def test_span_examples():
    assert span(Mat(F7, [[1, 0, 0, 0], [1, 0, 0, 0]])).dim == 1
    assert subspace_sum(span(e(0)), span(e(1))).dim == 2
    u = span(Mat(F7, [[1, 0, 0, 0], [1, 1, 0, 0]]))
    v = span(Mat(F7, [[1, 0, 0, 0], [0, 1, 0, 0]]))
    assert u == v


def test_intersection_examples():
    assert intersection_dim(span(e(0)), span(e(0))) == 1
    assert intersection_dim(span(e(0)), span(e(1))) == 0


def test_image_mul_examples():
    s = span(Mat(F7, [[1, 2, 0], [0, 0, 1]]))
    assert image_mul(s, Mat.identity(F7, 3)) == s
    a = matrix_A_r3(F7, 3)
    assert image_mul(span(e(0, 3)), a) == span(e(2, 3))
    s2 = span(Mat(F7, [[1, 0], [0, 1]]))
    assert image_mul(s2, Mat(F7, [[1, 0], [1, 0]])).dim == 1


def test_unit_vector_basis():
    assert is_unit_vector_basis(span(Mat(F7, [[1, 0, 0], [0, 0, 1]])))
    assert not is_unit_vector_basis(span(Mat(F7, [[1, 1, 0]])))
    # a scaled unit vector still spans a unit-vector space
    assert is_unit_vector_basis(span(Mat(F7, [[0, 3, 0]])))


@settings(max_examples=60, deadline=None)
@given(
    q=st.sampled_from([2, 3, 5, 7]),
    n=st.integers(1, 16),
    seed=st.integers(0, 2**32 - 1),
    du=st.integers(0, 6),
    dv=st.integers(0, 6),
)
def test_dimension_identity(q, n, seed, du, dv):
    f = field_of_order(q)
    rng = np.random.default_rng(seed)
    u = span(Mat(f, rng.integers(0, q, (du, n)).reshape(du, n)))
    v = span(Mat(f, rng.integers(0, q, (dv, n)).reshape(dv, n)))
    inter = intersection_dim(u, v)
    assert inter + subspace_sum(u, v).dim == u.dim + v.dim
    assert 0 <= inter <= min(u.dim, v.dim)


@settings(max_examples=40, deadline=None)
@given(q=st.sampled_from([2, 3]), seed=st.integers(0, 2**32 - 1))
def test_span_matches_enumeration(q, seed):
    f = field_of_order(q)
    rng = np.random.default_rng(seed)
    rows = rng.integers(0, q, (3, 4))
    s = span(Mat(f, rows))
    full = brute_span(f, rows)
    assert len(full) == q**s.dim
    if s.dim:
        assert brute_span(f, s.basis.data) == full


@settings(max_examples=40, deadline=None)
@given(q=st.sampled_from([3, 4, 7, 8]), n=st.integers(1, 8), seed=st.integers(0, 2**32 - 1))
def test_inverse_and_image_dimension(q, n, seed):
    f = field_of_order(q)
    rng = np.random.default_rng(seed)
    a = Mat(f, rng.integers(0, q, (n, n)))
    if rank(a) == n:
        assert invert(a) @ a == Mat.identity(f, n)
        s = span(Mat(f, rng.integers(0, q, (max(1, n // 2), n))))
        assert image_mul(s, a).dim == s.dim
    else:
        with pytest.raises(Singular):
            invert(a)


@settings(max_examples=40, deadline=None)
@given(q=st.sampled_from([5, 7, 16]), seed=st.integers(0, 2**32 - 1))
def test_canonical_form(q, seed):
    f = field_of_order(q)
    rng = np.random.default_rng(seed)
    rows = rng.integers(0, q, (4, 6))
    perm = rng.permutation(4)
    scales = rng.integers(1, q, 4)
    shuffled = f.mul(rows[perm], scales[:, None])
    assert span(Mat(f, rows)) == span(Mat(f, shuffled))
