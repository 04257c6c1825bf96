"""Subspaces and partial spreads of F_q^{2k}.

A partial spread is an ordered list of k-dimensional subspaces of F_q^{2k}
meeting pairwise in {0}.  Order matters here: it fixes the column order of
the defining set built from the spread.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from minspread import linalg as la
from minspread.field import FieldSpec, find_irreducible


class SpreadError(ValueError):
    """Invalid partial spread.  ``pair``/``member``/``witness`` locate the fault."""

    def __init__(self, message, pair=None, member=None, witness=None):
        super().__init__(message)
        self.pair = pair
        self.member = member
        self.witness = witness


class SpreadNotReached(RuntimeError):
    def __init__(self, target: int, partial: "PartialSpread | None", reached: int):
        super().__init__(f"target s not reached: wanted {target}, stopped at {reached}")
        self.target = target
        self.partial = partial
        self.reached = reached


class Subspace:
    """A subspace of F_q^m held as its canonical (RREF) basis."""

    __slots__ = ("field", "m", "basis")

    def __init__(self, field: FieldSpec, basis, m: int | None = None):
        B = la.as_matrix(basis, m)
        self.field = field
        self.m = B.shape[1]
        self.basis = la.canonical_basis(B, field, self.m)
        self.basis.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def vectors(self) -> np.ndarray:
        return la.span_vectors(self.basis, self.field, self.m)

    def nonzero_vectors(self) -> np.ndarray:
        return self.vectors()[1:]

    def contains(self, v) -> bool:
        return la.in_span(v, self.basis, self.field)

    def perp(self) -> "Subspace":
        return Subspace(self.field, la.nullspace(self.basis, self.field, self.m), self.m)

    def key(self) -> tuple:
        return (self.m, tuple(map(tuple, self.basis.tolist())))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.field == other.field and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Subspace(m={self.m}, basis={self.basis.tolist()})"

    def to_json(self) -> dict:
        return {"m": self.m, "basis": self.basis.tolist()}

    @classmethod
    def from_json(cls, field: FieldSpec, obj: dict) -> "Subspace":
        m = int(obj["m"])
        basis = obj["basis"]
        B = la.as_matrix(basis, m)
        if np.any((B < 0) | (B >= field.q)):
            raise ValueError("basis entries must be element codes in [0, q)")
        return cls(field, B, m)


@dataclass(frozen=True, eq=False)
class PartialSpread:
    field: FieldSpec
    k: int
    members: tuple

    @property
    def m(self) -> int:
        return 2 * self.k

    @property
    def s(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def __eq__(self, other):
        if not isinstance(other, PartialSpread):
            return NotImplemented
        return self.field == other.field and self.k == other.k and self.members == other.members

    def __hash__(self):
        return hash((self.field, self.k, self.members))

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "k": self.k,
            "members": [E.to_json() for E in self.members],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PartialSpread":
        field = FieldSpec.from_json(obj["field"])
        members = [Subspace.from_json(field, E) for E in obj["members"]]
        spread = validate(members)
        if spread.k != int(obj["k"]):
            raise SpreadError(f"declared k={obj['k']} but members have dimension {spread.k}")
        return spread


def _common_vector(U: Subspace, V: Subspace) -> np.ndarray:
    # c @ [U; V] = 0 gives c[:k] @ U = -c[k:] @ V, a vector in both
    A = np.vstack([U.basis, V.basis])
    c = la.left_kernel_vector(A, U.field)
    w = la.combine(c[None, : U.dim], U.basis, U.field)[0]
    return la.normalize(w, U.field)


def validate(candidate: Sequence[Subspace]) -> PartialSpread:
    """Check the partial-spread axioms and return the validated spread."""
    members = list(candidate)
    if not members:
        raise SpreadError("empty candidate list")
    F = members[0].field
    m = members[0].m
    for i, E in enumerate(members):
        if E.field != F:
            raise SpreadError(f"member {i} lives over a different field", member=i)
        if E.m != m:
            raise SpreadError(f"member {i} has ambient dimension {E.m}, expected {m}", member=i)
    if m % 2:
        raise SpreadError(f"ambient dimension {m} is odd")
    k = m // 2
    for i, E in enumerate(members):
        if E.dim != k:
            raise SpreadError(f"member {i} has dimension {E.dim}, expected {k}", member=i)
    s = len(members)
    if s < 2:
        raise SpreadError(f"a partial spread needs at least 2 members, got {s}")
    if s > F.q**k + 1:
        raise SpreadError(f"{s} members exceed the bound q^k+1 = {F.q**k + 1}")
    for i, j in combinations(range(s), 2):
        if la.span_dim(np.vstack([members[i].basis, members[j].basis]), F) != m:
            w = _common_vector(members[i], members[j])
            raise SpreadError(
                f"members {i} and {j} intersect nontrivially, e.g. in {w.tolist()}",
                pair=(i, j),
                witness=w,
            )
    return PartialSpread(F, k, tuple(members))


def graph_subspace(F: FieldSpec, M) -> Subspace:
    """{(x, x M) : x in F_q^k}."""
    M = np.asarray(M, dtype=np.int64)
    k = M.shape[0]
    return Subspace(F, np.hstack([np.eye(k, dtype=np.int64), M]))


def eb_family(F: FieldSpec, k: int, S: Sequence[int] | None = None) -> PartialSpread:
    """Members E_b = Span{e_i + b e_{k+i}}, b in S, ordered by code of b.

    ``S=None`` takes all of F_q.
    """
    S = sorted(set(F.elements() if S is None else (int(b) for b in S)))
    if len(S) < 2:
        raise SpreadError(f"need at least two scalars, got {S}")
    if any(not 0 <= b < F.q for b in S):
        raise SpreadError(f"scalars {S} are not element codes of F_{F.q}")
    I = np.eye(k, dtype=np.int64)
    return validate([graph_subspace(F, F.mul(b, I)) for b in S])


def companion_matrix(f: Sequence[int], F: FieldSpec) -> np.ndarray:
    """Matrix of multiplication by t on F_q[t]/(f) in the basis 1, t, ...,
    acting on row vectors: row i holds the coordinates of t^(i+1) mod f."""
    k = len(f) - 1
    M = np.zeros((k, k), dtype=np.int64)
    for i in range(k - 1):
        M[i, i + 1] = 1
    M[k - 1] = [F.neg(int(c)) for c in f[:k]]
    return M


def multiplication_matrix(lam: int, f: Sequence[int], F: FieldSpec) -> np.ndarray:
    """Matrix of x -> x * lambda on F_q[t]/(f); ``lam`` is the code
    sum(c_i q^i) of lambda = sum(c_i t^i)."""
    k = len(f) - 1
    C = companion_matrix(f, F)
    row = la.index_vectors(lam, k, F.q)[::-1]  # c_0 first
    rows = [row]
    for _ in range(k - 1):
        rows.append(la.matmul_t(rows[-1][None, :], C.T, F)[0])
    return np.array(rows, dtype=np.int64)


def desarguesian_spread(F: FieldSpec, k: int) -> PartialSpread:
    """The complete spread {(x, x M_lambda)} plus {(0, x)}, lambda over F_{q^k}."""
    if k < 1:
        raise SpreadError("k must be >= 1")
    f = find_irreducible(F, k)
    members = [graph_subspace(F, multiplication_matrix(lam, f, F)) for lam in range(F.q**k)]
    members.append(Subspace(F, np.hstack([np.zeros((k, k), dtype=np.int64), np.eye(k, dtype=np.int64)])))
    return validate(members)


def thm34_spread(F: FieldSpec, k: int) -> PartialSpread:
    """{(x,0)}, {(0,x)}, {(x,x)}, {(x,xM)} with M the companion matrix of the
    smallest irreducible of degree k."""
    if k < 2:
        raise SpreadError("this family needs k >= 2 (for k = 1 the companion matrix is 0)")
    I = np.eye(k, dtype=np.int64)
    Z = np.zeros((k, k), dtype=np.int64)
    M = companion_matrix(find_irreducible(F, k), F)
    return validate([
        Subspace(F, np.hstack([I, Z])),
        Subspace(F, np.hstack([Z, I])),
        Subspace(F, np.hstack([I, I])),
        Subspace(F, np.hstack([I, M])),
    ])


def dual_spread(spread: PartialSpread) -> PartialSpread:
    return validate([E.perp() for E in spread.members])


def subfamily(spread: PartialSpread, indices: Sequence[int]) -> PartialSpread:
    idx = [int(i) for i in indices]
    if len(set(idx)) != len(idx):
        raise SpreadError(f"duplicate indices in {idx}")
    bad = [i for i in idx if not 0 <= i < spread.s]
    if bad:
        raise SpreadError(f"indices {bad} out of range for s={spread.s}")
    return validate([spread.members[i] for i in idx])


def extend(spread: PartialSpread, extra: Sequence[Subspace]) -> PartialSpread:
    return validate(list(spread.members) + list(extra))


# brute-force coverage masks beyond this many ambient vectors fall back to ranks
_MASK_LIMIT = 1 << 22


def random_partial_spread(
    F: FieldSpec, k: int, s: int, seed: int, max_rejections: int = 10_000
) -> PartialSpread:
    """Greedy random partial spread of size ``s``.

    Candidates are uniformly random k x 2k matrices from a Philox stream
    seeded with ``seed``; a full-rank candidate is kept iff it meets every
    kept member trivially.  Raises :class:`SpreadNotReached` after
    ``max_rejections`` consecutive rejections.
    """
    if k < 1:
        raise SpreadError("k must be >= 1")
    m = 2 * k
    if not 2 <= s <= F.q**k + 1:
        raise SpreadError(f"s={s} outside [2, q^k+1 = {F.q**k + 1}]")
    rng = np.random.Generator(np.random.Philox(seed))
    use_mask = F.q**m <= _MASK_LIMIT
    covered = np.zeros(F.q**m if use_mask else 0, dtype=bool)
    coeffs = la.coefficient_tuples(k, F)[1:]
    accepted: list[Subspace] = []
    rejections = 0
    while len(accepted) < s:
        if rejections >= max_rejections:
            partial = validate(accepted) if len(accepted) >= 2 else None
            raise SpreadNotReached(s, partial, len(accepted))
        cand = rng.integers(0, F.q, size=(k, m))
        if use_mask:
            # rank k iff no nonzero combination vanishes
            idx = la.vector_index(la.combine(coeffs, cand, F), F.q)
            ok = bool(idx.all()) and not covered[idx].any()
        else:
            ok = la.rank(cand, F) == k and all(
                la.span_dim(np.vstack([cand, A.basis]), F) == m for A in accepted
            )
        if not ok:
            rejections += 1
            continue
        rejections = 0
        accepted.append(Subspace(F, cand))
        if use_mask:
            covered[idx] = True
    return validate(accepted)
