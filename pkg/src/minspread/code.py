"""Linear codes C(D) = {(y.d_1, ..., y.d_n) : y in F_q^m} from a defining set D.

Codewords are evaluated on demand from the message y; the full code is
never tabulated.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from minspread import linalg as la
from minspread.field import FieldSpec
from minspread.spread import PartialSpread

CHUNK = 4096


class RankError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class DefiningSet:
    """Ordered multiset of nonzero vectors d_1, ..., d_n of F_q^m."""

    field: FieldSpec
    m: int
    vectors: np.ndarray
    rank: int

    @classmethod
    def from_vectors(cls, field: FieldSpec, vectors, m: int | None = None) -> "DefiningSet":
        V = la.as_matrix(vectors, m)
        if np.any((V < 0) | (V >= field.q)):
            raise ValueError("defining set entries must be element codes in [0, q)")
        if np.any(~V.any(axis=1)):
            raise ValueError("a defining set may not contain the zero vector")
        V = V.copy()
        V.setflags(write=False)
        return cls(field, V.shape[1], V, la.rank(V, field))

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def full_rank(self) -> bool:
        return self.rank == self.m

    def require_full_rank(self):
        if self.rank != self.m:
            raise RankError(f"r(D) = {self.rank} < m = {self.m}")

    def __eq__(self, other):
        if not isinstance(other, DefiningSet):
            return NotImplemented
        return (
            self.field == other.field
            and self.m == other.m
            and np.array_equal(self.vectors, other.vectors)
        )

    def counter(self) -> Counter:
        return Counter(map(tuple, self.vectors.tolist()))

    def is_submultiset_of(self, other: "DefiningSet") -> bool:
        mine, theirs = self.counter(), other.counter()
        return all(theirs[v] >= c for v, c in mine.items())

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "m": self.m,
            "defining_set": self.vectors.tolist(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DefiningSet":
        field = FieldSpec.from_json(obj["field"])
        return cls.from_vectors(field, obj["defining_set"], int(obj["m"]))


@dataclass(frozen=True, eq=False)
class Codeword:
    y: np.ndarray
    values: np.ndarray

    @property
    def support(self) -> np.ndarray:
        return self.values != 0

    def __len__(self):
        return len(self.values)


def defining_set(spread: PartialSpread) -> DefiningSet:
    """Nonzero vectors of each member, members in order."""
    parts = [E.nonzero_vectors() for E in spread.members]
    return DefiningSet.from_vectors(spread.field, np.vstack(parts), spread.m)


def evaluate(Y, D: DefiningSet) -> np.ndarray:
    """Codeword values for each row of ``Y``: an (r x n) array."""
    Y = la.as_matrix(Y, D.m)
    return la.matmul_t(Y, D.vectors, D.field)


def codeword(y, D: DefiningSet) -> Codeword:
    y = np.asarray(y, dtype=np.int64)
    if y.shape != (D.m,):
        raise la.DimensionError(f"message has shape {y.shape}, expected ({D.m},)")
    return Codeword(y, evaluate(y[None, :], D)[0])


def weight(c) -> int:
    values = c.values if isinstance(c, Codeword) else np.asarray(c)
    return int(np.count_nonzero(values))


def covers(u, v) -> bool:
    """True iff ``v`` covers ``u``, i.e. supp(u) is a subset of supp(v)."""
    a = u.values if isinstance(u, Codeword) else np.asarray(u)
    b = v.values if isinstance(v, Codeword) else np.asarray(v)
    if a.shape != b.shape:
        raise la.DimensionError("codewords of different lengths")
    return not np.any((a != 0) & (b == 0))


def chunk_ranges(total: int, size: int = CHUNK):
    return [(lo, min(lo + size, total)) for lo in range(0, total, size)]


def map_chunks(fn, total: int, threads: int = 1, size: int = CHUNK):
    """Apply ``fn(lo, hi)`` over index chunks; results in chunk order."""
    ranges = chunk_ranges(total, size)
    if threads <= 1 or len(ranges) <= 1:
        return [fn(lo, hi) for lo, hi in ranges]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda r: fn(*r), ranges))


def weight_distribution(D: DefiningSet, threads: int = 1) -> dict:
    """Map weight -> number of nonzero messages y with that codeword weight."""
    D.require_full_rank()
    P = la.projective_points(D.m, D.field)

    def count(lo, hi):
        w = np.count_nonzero(evaluate(P[lo:hi], D), axis=1)
        return Counter(w.tolist())

    total = Counter()
    for part in map_chunks(count, len(P), threads):
        total.update(part)
    return {w: c * (D.field.q - 1) for w, c in sorted(total.items())}


def distribution_pairs(W: dict) -> list:
    return [[int(w), int(c)] for w, c in sorted(W.items())]


def generator_matrix(D: DefiningSet) -> np.ndarray:
    return D.vectors.T.copy()


def generator_matrix_text(D: DefiningSet) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in generator_matrix(D).tolist()) + "\n"
