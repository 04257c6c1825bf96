"""Exact linear algebra over F_q on numpy arrays of element codes.

Vectors are 1-D integer arrays, matrices 2-D, rows are vectors.  Every
ordering is lexicographic by element code, which is also the integer order
of :func:`vector_index` (first coordinate most significant).
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from minspread.field import FieldSpec


class DimensionError(ValueError):
    pass


def as_matrix(rows, m: int | None = None) -> np.ndarray:
    A = np.asarray(rows, dtype=np.int64)
    if A.size == 0:
        if m is None:
            m = A.shape[-1] if A.ndim == 2 else 0
        return np.zeros((0, m), dtype=np.int64)
    if A.ndim == 1:
        A = A[None, :]
    if A.ndim != 2:
        raise DimensionError(f"expected a 2-D array of vectors, got shape {A.shape}")
    if m is not None and A.shape[1] != m:
        raise DimensionError(f"vectors have length {A.shape[1]}, expected {m}")
    return A


def dot(x, y, F: FieldSpec) -> int:
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if x.shape != y.shape or x.ndim != 1:
        raise DimensionError(f"dot of shapes {x.shape} and {y.shape}")
    acc = 0
    for a, b in zip(x.tolist(), y.tolist()):
        acc = F.add(acc, F.mul(a, b))
    return int(acc)


def matmul_t(X, Y, F: FieldSpec) -> np.ndarray:
    """``X @ Y.T`` over F_q for row-stacks X (r x m) and Y (n x m)."""
    X = np.asarray(X, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    if X.shape[1] != Y.shape[1]:
        raise DimensionError(f"inner dimensions differ: {X.shape[1]} vs {Y.shape[1]}")
    if F.e == 1:
        return (X @ Y.T) % F.p
    acc = np.zeros((X.shape[0], Y.shape[0]), dtype=np.int64)
    for j in range(X.shape[1]):
        acc = F.add(acc, F.mul(X[:, j, None], Y[None, :, j]))
    return acc


def scale(a: int, x, F: FieldSpec) -> np.ndarray:
    return np.asarray(F.mul(a, np.asarray(x, dtype=np.int64)), dtype=np.int64)


def rref(A, F: FieldSpec) -> tuple[np.ndarray, int, tuple]:
    """Reduced row-echelon form.

    Returns ``(R, rank, pivots)`` where ``R`` has the shape of ``A`` with the
    zero rows at the bottom.  Pivot search takes the leftmost column with a
    nonzero entry and the topmost such row.
    """
    R = np.array(A, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise DimensionError(f"rref expects a matrix, got shape {R.shape}")
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        piv = int(R[r, c])
        if piv != 1:
            R[r] = F.mul(F.inv(piv), R[r])
        col = R[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            R[hit] = F.sub(R[hit], F.mul(col[hit, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, r, tuple(pivots)


def rank(A, F: FieldSpec) -> int:
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    if A.shape[0] > A.shape[1]:
        A = np.unique(A, axis=0)
    return rref(A, F)[1]


def span_dim(S, F: FieldSpec) -> int:
    return rank(as_matrix(S), F)


def canonical_basis(S, F: FieldSpec, m: int | None = None) -> np.ndarray:
    """Nonzero rows of the RREF of ``S``: the canonical basis of Span(S)."""
    A = as_matrix(S, m)
    if A.shape[0] == 0:
        return A
    R, r, _ = rref(A, F)
    return R[:r]


def nullspace(S, F: FieldSpec, m: int | None = None) -> np.ndarray:
    """Canonical basis of S^perp = {v : v . s = 0 for all s in S}."""
    A = as_matrix(S, m)
    m = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(m, dtype=np.int64)
    R, r, pivots = rref(A, F)
    free = [c for c in range(m) if c not in pivots]
    basis = np.zeros((len(free), m), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, pc in enumerate(pivots):
            basis[t, pc] = F.neg(int(R[i, f]))
    return canonical_basis(basis, F, m) if len(free) else basis


def left_kernel_vector(A, F: FieldSpec) -> np.ndarray | None:
    """Some nonzero c with c @ A = 0, or None when the rows are independent."""
    A = as_matrix(A)
    K = nullspace(A.T, F, A.shape[0])
    return K[0] if len(K) else None


def intersection_dim(U, V, F: FieldSpec) -> int:
    U = as_matrix(U)
    V = as_matrix(V, U.shape[1])
    return span_dim(U, F) + span_dim(V, F) - span_dim(np.vstack([U, V]), F)


def in_span(v, basis, F: FieldSpec) -> bool:
    B = as_matrix(basis, len(v))
    return span_dim(np.vstack([B, np.asarray(v)[None, :]]), F) == span_dim(B, F)


# -- enumeration ----------------------------------------------------------


def index_vectors(idx, m: int, q: int) -> np.ndarray:
    """Vectors whose base-q digits (first coordinate most significant) are ``idx``."""
    idx = np.asarray(idx, dtype=np.int64)
    out = np.empty(idx.shape + (m,), dtype=np.int64)
    rest = idx.copy()
    for j in range(m - 1, -1, -1):
        out[..., j] = rest % q
        rest //= q
    return out


def vector_index(V, q: int) -> np.ndarray:
    V = np.asarray(V, dtype=np.int64)
    place = q ** np.arange(V.shape[-1] - 1, -1, -1, dtype=np.int64)
    return V @ place


def all_vectors(m: int, F: FieldSpec) -> np.ndarray:
    return index_vectors(np.arange(F.q**m), m, F.q)


def projective_indices(m: int, q: int) -> np.ndarray:
    # a normalized vector whose leading 1 sits at position m-1-j has index in [q^j, 2 q^j)
    return np.concatenate([np.arange(q**j, 2 * q**j, dtype=np.int64) for j in range(m)])


def projective_points(m: int, F: FieldSpec) -> np.ndarray:
    """One normalized representative per scalar class, lexicographic order."""
    if m < 1:
        raise DimensionError("ambient dimension must be >= 1")
    return index_vectors(projective_indices(m, F.q), m, F.q)


def projective_representatives(m: int, F: FieldSpec) -> Iterator[np.ndarray]:
    if m < 1:
        raise DimensionError("ambient dimension must be >= 1")
    for j in range(m):
        for idx in range(F.q**j, 2 * F.q**j):
            yield index_vectors(idx, m, F.q)


def normalize(v, F: FieldSpec) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64)
    nz = np.flatnonzero(v)
    if nz.size == 0:
        return v.copy()
    return np.asarray(F.mul(F.inv(int(v[nz[0]])), v), dtype=np.int64)


def coefficient_tuples(k: int, F: FieldSpec) -> np.ndarray:
    return index_vectors(np.arange(F.q**k), k, F.q)


def combine(coeffs, basis, F: FieldSpec) -> np.ndarray:
    """Rows ``sum_i coeffs[r, i] * basis[i]``."""
    C = np.asarray(coeffs, dtype=np.int64)
    B = as_matrix(basis)
    if B.shape[0] == 0:
        return np.zeros((C.shape[0], B.shape[1]), dtype=np.int64)
    return matmul_t(C, B.T, F)


def span_vectors(basis, F: FieldSpec, m: int | None = None) -> np.ndarray:
    """All q^k vectors of Span(basis), ordered by coefficient tuple."""
    B = as_matrix(basis, m)
    k = B.shape[0]
    if k == 0:
        return np.zeros((1, B.shape[1]), dtype=np.int64)
    return combine(coefficient_tuples(k, F), B, F)


def enumerate_subspace(basis, F: FieldSpec, m: int | None = None) -> Iterator[np.ndarray]:
    yield from span_vectors(basis, F, m)


def stack(vectors: Iterable, m: int) -> np.ndarray:
    return as_matrix([np.asarray(v) for v in vectors], m)
