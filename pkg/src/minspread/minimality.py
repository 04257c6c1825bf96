"""Minimality of C(D): geometric, brute-force and Ashikhmin-Barg checks.

The geometric test uses the hyperplane restriction
H(y, D) = {d in D : y.d = 0} and V(y, D) = Span H(y, D): the codeword c(y)
is minimal exactly when dim V(y, D) = m - 1.  The brute-force test compares
supports of all projective codewords directly and shares no code with the
geometric path beyond codeword evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from enum import Enum

import numpy as np

from minspread import linalg as la
from minspread.code import (
    DefiningSet,
    RankError,
    codeword,
    covers,
    evaluate,
    map_chunks,
)
from minspread.field import FieldSpec

BRUTEFORCE_LIMIT = 1 << 20
GEOMETRIC_CHUNK = 512


class Verdict(str, Enum):
    MINIMAL = "Minimal"
    NOT_MINIMAL = "NotMinimal"
    INCONCLUSIVE = "Inconclusive"


class SizeGuardError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class HyperplaneRestriction:
    y: np.ndarray
    indices: np.ndarray  # positions of H(y, D) inside D
    members: np.ndarray
    v_dim: int


@dataclass
class MinimalityReport:
    verdict: Verdict
    method: str
    witness: np.ndarray | None = None
    certificate: np.ndarray | None = None
    stats: dict = dc_field(default_factory=dict)

    @property
    def minimal(self) -> bool:
        return self.verdict is Verdict.MINIMAL

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "method": self.method,
            "witness": None if self.witness is None else self.witness.tolist(),
            "certificate": None if self.certificate is None else self.certificate.tolist(),
            "stats": dict(self.stats),
        }


def restriction(y, D: DefiningSet) -> HyperplaneRestriction:
    y = np.asarray(y, dtype=np.int64)
    if not y.any():
        raise ValueError("H(y, D) is only considered for y != 0")
    zero = codeword(y, D).values == 0
    idx = np.flatnonzero(zero)
    members = D.vectors[idx]
    return HyperplaneRestriction(y, idx, members, la.rank(members, D.field))


def is_codeword_minimal(y, D: DefiningSet) -> bool:
    D.require_full_rank()
    return restriction(y, D).v_dim == D.m - 1


def _vdims(P: np.ndarray, D: DefiningSet) -> np.ndarray:
    zero = evaluate(P, D) == 0
    return np.array([la.rank(D.vectors[row], D.field) for row in zero], dtype=np.int64)


def vdim_profile(D: DefiningSet, threads: int = 1) -> np.ndarray:
    """dim V(y, D) for every projective representative y, in order."""
    P = la.projective_points(D.m, D.field)
    parts = map_chunks(lambda lo, hi: _vdims(P[lo:hi], D), len(P), threads, GEOMETRIC_CHUNK)
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def check_geometric(D: DefiningSet, threads: int = 1) -> MinimalityReport:
    """Minimal iff dim V(y, D) = m - 1 for every projective y.

    The witness is the first failing y in projective order; stats cover the
    representatives up to and including it, whatever ``threads`` is.
    """
    D.require_full_rank()
    m = D.m
    P = la.projective_points(m, D.field)
    if threads <= 1:
        seen = []
        fail = None
        for lo in range(0, len(P), GEOMETRIC_CHUNK):
            v = _vdims(P[lo : lo + GEOMETRIC_CHUNK], D)
            bad = np.flatnonzero(v < m - 1)
            if bad.size:
                seen.append(v[: bad[0] + 1])
                fail = lo + int(bad[0])
                break
            seen.append(v)
        vd = np.concatenate(seen)
    else:
        vd = vdim_profile(D, threads)
        bad = np.flatnonzero(vd < m - 1)
        fail = int(bad[0]) if bad.size else None
        if fail is not None:
            vd = vd[: fail + 1]
    stats = {
        "checked": int(len(vd)),
        "total": int(len(P)),
        "min_vdim": int(vd.min()),
        "max_vdim": int(vd.max()),
    }
    if fail is None:
        return MinimalityReport(Verdict.MINIMAL, "geometric", stats=stats)
    y0 = P[fail]
    x0 = covering_certificate(y0, D)
    return MinimalityReport(Verdict.NOT_MINIMAL, "geometric", y0, x0, stats)


def _normalized_rows(V: np.ndarray) -> np.ndarray:
    nz = V != 0
    has = nz.any(axis=1)
    lead = V[np.arange(len(V)), nz.argmax(axis=1)]
    return has & (lead == 1)


def covering_certificate(y0, D: DefiningSet) -> np.ndarray:
    """Smallest normalized x0 in V(y0, D)^perp outside Span{y0}.

    Any such x0 has H(y0, D) inside H(x0, D), so c(x0) is covered by c(y0)
    without being a multiple of it.
    """
    D.require_full_rank()
    y0 = np.asarray(y0, dtype=np.int64)
    H = restriction(y0, D)
    if H.v_dim == D.m - 1:
        raise ValueError("c(y0) is minimal; no covering certificate exists")
    K = la.nullspace(H.members, D.field, D.m)
    cand = la.span_vectors(K, D.field, D.m)
    cand = cand[_normalized_rows(cand)]
    y_norm = la.normalize(y0, D.field)
    cand = cand[np.any(cand != y_norm, axis=1)]
    x0 = cand[np.argmin(la.vector_index(cand, D.field.q))]
    if not covers(codeword(x0, D), codeword(y0, D)) or la.span_dim([x0, y0], D.field) != 2:
        raise AssertionError(f"certificate {x0.tolist()} failed replay against {y0.tolist()}")
    return x0


def _guard(D: DefiningSet):
    if D.field.q**D.m > BRUTEFORCE_LIMIT:
        raise SizeGuardError(
            f"brute force needs q^m <= {BRUTEFORCE_LIMIT}, got {D.field.q}^{D.m}"
        )


def _covered_by(S: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """Boolean (R x c): entry [x, j] says supp(x) lies inside supp(cols[j])."""
    outside = S.astype(np.float32) @ (~S[cols]).T.astype(np.float32)
    return outside == 0


def check_bruteforce(D: DefiningSet, chunk: int = 256) -> MinimalityReport:
    """Compare the supports of all pairs of projective codewords."""
    D.require_full_rank()
    _guard(D)
    P = la.projective_points(D.m, D.field)
    S = evaluate(P, D) != 0
    R = len(P)
    for lo in range(0, R, chunk):
        cols = np.arange(lo, min(lo + chunk, R))
        cov = _covered_by(S, cols)
        cov[cols, np.arange(len(cols))] = False
        hit = np.flatnonzero(cov.any(axis=0))
        if hit.size:
            j = int(hit[0])
            x = int(np.flatnonzero(cov[:, j])[0])
            stats = {"checked": lo + j + 1, "total": R, "min_vdim": None, "max_vdim": None}
            return MinimalityReport(Verdict.NOT_MINIMAL, "bruteforce", P[lo + j], P[x], stats)
    stats = {"checked": R, "total": R, "min_vdim": None, "max_vdim": None}
    return MinimalityReport(Verdict.MINIMAL, "bruteforce", stats=stats)


def bruteforce_minimal_mask(D: DefiningSet) -> np.ndarray:
    """Per projective representative: is its codeword minimal (support test)?"""
    D.require_full_rank()
    _guard(D)
    P = la.projective_points(D.m, D.field)
    S = evaluate(P, D) != 0
    cov = _covered_by(S, np.arange(len(P)))
    np.fill_diagonal(cov, False)
    return ~cov.any(axis=0)


def ab_bound(W: dict, field: FieldSpec) -> MinimalityReport:
    """Ashikhmin-Barg: minimal if w_min / w_max > (q-1)/q; otherwise no verdict."""
    weights = [w for w, c in W.items() if w > 0 and c > 0]
    if not weights:
        raise ValueError("empty weight distribution")
    q = field.q
    w_min, w_max = min(weights), max(weights)
    stats = {
        "checked": int(sum(c for w, c in W.items() if w > 0)),
        "min_vdim": None,
        "max_vdim": None,
        "w_min": int(w_min),
        "w_max": int(w_max),
    }
    verdict = Verdict.MINIMAL if q * w_min > (q - 1) * w_max else Verdict.INCONCLUSIVE
    return MinimalityReport(verdict, "ab_bound", stats=stats)


def monotonicity_check(D1: DefiningSet, D2: DefiningSet) -> bool:
    """For D1 inside D2 (both of rank m): C(D1) minimal implies C(D2) minimal."""
    if not D1.is_submultiset_of(D2):
        raise ValueError("D1 is not a sub-multiset of D2")
    if D1.rank != D1.m or D2.rank != D2.m:
        raise RankError(f"ranks r(D1)={D1.rank}, r(D2)={D2.rank}; both must equal m={D1.m}")
    small = check_geometric(D1).minimal
    big = check_geometric(D2).minimal
    return big or not small
