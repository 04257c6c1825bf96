import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from minspread import linalg as la
from minspread.field import make_field

SHAPES = [(2, 2), (2, 4), (3, 2), (3, 4), (4, 4), (5, 4), (2, 6)]


def field_of(q):
    return {2: make_field(2), 3: make_field(3), 4: make_field(2, 2), 5: make_field(5)}[q]


def brute_span(rows, F, m):
    """Every linear combination, as a set of tuples."""
    rows = [np.asarray(r) for r in rows]
    out = set()
    for coeffs in itertools.product(range(F.q), repeat=len(rows)):
        v = np.zeros(m, dtype=np.int64)
        for c, r in zip(coeffs, rows):
            v = F.add(v, F.mul(c, r))
        out.add(tuple(int(x) for x in v))
    return out


def test_dot_examples():
    F2, F3 = make_field(2), make_field(3)
    assert la.dot([1, 0, 0], [1, 0, 0], F2) == 1
    assert la.dot([1, 1], [1, 2], F3) == 0
    assert la.dot([1, 2], [2, 2], F3) == 0
    with pytest.raises(la.DimensionError):
        la.dot([1, 2], [1, 2, 0], F3)


def test_rref_examples():
    F = make_field(3)
    I = np.eye(4, dtype=np.int64)
    R, r, piv = la.rref(I, F)
    assert np.array_equal(R, I) and r == 4 and piv == (0, 1, 2, 3)
    Z = np.zeros((3, 4), dtype=np.int64)
    R, r, piv = la.rref(Z, F)
    assert np.array_equal(R, Z) and r == 0 and piv == ()
    R, r, _ = la.rref([[1, 1, 0, 0], [1, 1, 0, 0]], F)
    assert r == 1
    assert R.tolist() == [[1, 1, 0, 0], [0, 0, 0, 0]]


def test_rref_normalizes_pivots_over_f4():
    F = make_field(2, 2)
    R, r, piv = la.rref([[0, 2, 3], [3, 1, 0]], F)
    assert r == 2 and piv == (0, 1)
    assert R[0, 0] == 1 and R[1, 1] == 1 and R[0, 1] == 0


@pytest.mark.parametrize("q,m", SHAPES)
def test_rref_idempotent_and_span_preserving(q, m):
    F = field_of(q)
    rng = np.random.default_rng(q * 10 + m)
    for _ in range(30):
        A = rng.integers(0, q, size=(int(rng.integers(1, m + 2)), m))
        R, r, _ = la.rref(A, F)
        R2, r2, _ = la.rref(R, F)
        assert np.array_equal(R, R2) and r == r2
        if q**m <= 256:
            assert brute_span(A, F, m) == brute_span(R[:r], F, m)


def test_nullspace_examples():
    F = make_field(2)
    assert la.nullspace([], F, 4).shape == (4, 4)
    assert la.nullspace(np.eye(4, dtype=np.int64), F, 4).shape == (0, 4)
    N = la.nullspace([[1, 0, 0, 0], [0, 1, 0, 0]], F, 4)
    assert N.tolist() == [[0, 0, 1, 0], [0, 0, 0, 1]]


def test_span_dim_examples():
    F = make_field(3)
    v = np.array([1, 2, 0, 1])
    assert la.span_dim([v, la.scale(2, v, F)], F) == 1
    assert la.span_dim(np.eye(4, dtype=np.int64), F) == 4
    assert la.span_dim([], F) == 0


def test_intersection_dim_examples():
    F = make_field(2)
    U = [[1, 0, 0, 0], [0, 1, 0, 0]]
    V = [[0, 0, 1, 0], [0, 0, 0, 1]]
    assert la.intersection_dim(U, U, F) == 2
    assert la.intersection_dim(U, V, F) == 0
    E0 = [[1, 0, 0, 0], [0, 1, 0, 0]]
    E1 = [[1, 0, 1, 0], [0, 1, 0, 1]]
    assert la.span_dim(np.vstack([E0, E1]), F) == 4
    assert la.intersection_dim(E0, E1, F) == 0


@pytest.mark.parametrize("q,m", SHAPES)
def test_rank_nullity(q, m):
    F = field_of(q)
    rng = np.random.default_rng(1000 + q * 10 + m)
    for _ in range(500):
        S = rng.integers(0, q, size=(int(rng.integers(0, m + 2)), m))
        N = la.nullspace(S, F, m)
        assert la.span_dim(S, F) + len(N) == m
        if len(S) and len(N):
            assert not la.matmul_t(S, N, F).any()


@pytest.mark.parametrize("q,m", SHAPES[:5])
def test_biduality(q, m):
    F = field_of(q)
    rng = np.random.default_rng(7)
    for _ in range(50):
        S = rng.integers(0, q, size=(int(rng.integers(1, m + 1)), m))
        back = la.nullspace(la.nullspace(S, F, m), F, m)
        assert np.array_equal(back, la.canonical_basis(S, F, m))


@settings(max_examples=150, deadline=None)
@given(
    st.sampled_from(SHAPES),
    st.lists(st.lists(st.integers(0, 4), min_size=6, max_size=6), max_size=7),
)
def test_rank_nullity_property(shape, raw):
    q, m = shape
    F = field_of(q)
    S = np.array([[x % q for x in row[:m]] for row in raw], dtype=np.int64).reshape(-1, m)
    assert la.span_dim(S, F) + len(la.nullspace(S, F, m)) == m


def test_projective_examples():
    F2, F3, F4 = make_field(2), make_field(3), make_field(2, 2)
    assert la.projective_points(2, F2).tolist() == [[0, 1], [1, 0], [1, 1]]
    assert len(la.projective_points(2, F3)) == (9 - 1) // 2
    assert len(la.projective_points(4, F4)) == (256 - 1) // 3
    assert [v.tolist() for v in la.projective_representatives(2, F2)] == [[0, 1], [1, 0], [1, 1]]


@pytest.mark.parametrize("q,m", [(2, 3), (3, 3), (4, 2), (4, 3), (5, 2), (3, 4)])
def test_projective_partition(q, m):
    F = field_of(q)
    P = la.projective_points(m, F)
    assert len(P) == (q**m - 1) // (q - 1)
    idx = la.vector_index(P, q)
    assert np.all(np.diff(idx) > 0)  # lexicographic
    owner = {}
    for r, v in enumerate(P):
        for a in range(1, q):
            owner.setdefault(int(la.vector_index(la.scale(a, v, F), q)), []).append(r)
    assert sorted(owner) == list(range(1, q**m))
    assert all(len(rs) == 1 for rs in owner.values())


def test_enumerate_subspace():
    F3 = make_field(3)
    assert la.span_vectors(np.zeros((0, 3), dtype=np.int64), F3).tolist() == [[0, 0, 0]]
    v = [1, 2, 0]
    assert la.span_vectors([v], F3).tolist() == [[0, 0, 0], [1, 2, 0], [2, 1, 0]]
    F4 = make_field(2, 2)
    B = la.canonical_basis([[1, 0, 2, 3], [0, 1, 1, 2]], F4)
    V = list(la.enumerate_subspace(B, F4))
    assert len(V) == 16
    assert len({tuple(x.tolist()) for x in V}) == 16
    assert {tuple(x.tolist()) for x in V} == brute_span(B, F4, 4)


def test_index_round_trip():
    F = make_field(3)
    V = la.all_vectors(3, F)
    assert np.array_equal(la.vector_index(V, 3), np.arange(27))
