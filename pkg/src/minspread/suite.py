"""Acceptance-suite runner behind ``minspread verify-paper``.

Builds a deterministic catalog of spread instances and runs one check per
row over it.  Each row returns a :class:`RowResult`; the suite passes iff
every selected row does.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations

import numpy as np

from minspread import linalg as la
from minspread.code import (
    DefiningSet,
    codeword,
    covers,
    defining_set,
    evaluate,
    weight_distribution,
)
from minspread.field import FieldSpec, make_field
from minspread.minimality import (
    Verdict,
    ab_bound,
    check_bruteforce,
    check_geometric,
    is_codeword_minimal,
    monotonicity_check,
    restriction,
)
from minspread.spread import (
    PartialSpread,
    SpreadNotReached,
    desarguesian_spread,
    dual_spread,
    eb_family,
    extend,
    random_partial_spread,
    subfamily,
    thm34_spread,
)

SEEDS = (1, 2, 3)
ORACLE_LIMIT = 1 << 16
INSTANCE_BUDGET = 5.0

THM31_SHAPES = ((2, 1), (2, 2), (3, 1), (3, 2), (4, 2))
THM32_SHAPES = ((3, 2), (4, 2), (5, 2))


def field_of_order(q: int) -> FieldSpec:
    for p in range(2, q + 1):
        e, r = 0, q
        while r % p == 0:
            r //= p
            e += 1
        if e and r == 1:
            return make_field(p, e)
    raise ValueError(f"{q} is not a prime power")


@dataclass(eq=False)
class Instance:
    name: str
    spread: PartialSpread
    tags: tuple = ()

    @property
    def field(self) -> FieldSpec:
        return self.spread.field

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def k(self) -> int:
        return self.spread.k

    @property
    def s(self) -> int:
        return self.spread.s

    @property
    def small(self) -> bool:
        return self.q**self.spread.m <= ORACLE_LIMIT

    @cached_property
    def D(self) -> DefiningSet:
        return defining_set(self.spread)

    @cached_property
    def geometric(self):
        return check_geometric(self.D)

    @cached_property
    def bruteforce(self):
        return check_bruteforce(self.D)

    @cached_property
    def weights(self) -> dict:
        return weight_distribution(self.D)


def _random(F: FieldSpec, k: int, s: int, seed: int):
    try:
        return random_partial_spread(F, k, s, seed)
    except SpreadNotReached:
        return None


@dataclass
class Catalog:
    instances: list = dc_field(default_factory=list)
    skipped: list = dc_field(default_factory=list)

    def add(self, name, spread, *tags):
        self.instances.append(Instance(name, spread, tags))

    def tagged(self, tag):
        return [I for I in self.instances if tag in I.tags]


def build_catalog() -> Catalog:
    cat = Catalog()
    for q, k in THM31_SHAPES:
        F = field_of_order(q)
        full = desarguesian_spread(F, k)
        sizes = sorted({q + 1, q**k + 1})
        for s in sizes:
            sp = full if s == full.s else subfamily(full, range(s))
            cat.add(f"des q={q} k={k} s={s}", sp, "thm31")
            for seed in SEEDS:
                r = _random(F, k, s, seed)
                if r is None:
                    cat.skipped.append(f"random q={q} k={k} s={s} seed={seed}: target s not reached")
                else:
                    cat.add(f"random q={q} k={k} s={s} seed={seed}", r, "thm31")
    for q, k in THM32_SHAPES:
        F = field_of_order(q)
        full = desarguesian_spread(F, k)
        for s in (2, 3):
            cat.add(f"des q={q} k={k} s={s}", subfamily(full, range(s)), "thm32")
            for seed in SEEDS:
                r = _random(F, k, s, seed)
                if r is None:
                    cat.skipped.append(f"random q={q} k={k} s={s} seed={seed}: target s not reached")
                else:
                    cat.add(f"random q={q} k={k} s={s} seed={seed}", r, "thm32")
    for q in (4, 5):
        F = field_of_order(q)
        eb = eb_family(F, 2)
        cat.add(f"eb q={q} k=2 S=F_q", eb, "thm33")
        eb4 = eb if eb.s == 4 else eb_family(F, 2, range(4))
        t34 = thm34_spread(F, 2)
        cat.add(f"thm34 q={q} k=2", t34, "thm34")
        if eb4 is not eb:
            cat.add(f"eb q={q} k=2 S={{0,1,2,3}}", eb4, "same")
        cat.add(f"eb4 pair q={q}", eb4, "same-eb")
        cat.add(f"thm34 pair q={q}", t34, "same-thm34")
        full = desarguesian_spread(F, 2)
        extra = [E for E in full.members if E not in t34.members][:2]
        cat.add(f"thm34+2 q={q} k=2", extend(t34, extra), "mono-up")
        for size in range(2, eb.s):
            for S in combinations(range(eb.s), size):
                cat.add(f"eb-sub q={q} k=2 idx={list(S)}", subfamily(eb, S), "mono-down")
    return cat


@dataclass
class RowResult:
    row: str
    criterion: int
    passed: bool
    details: list = dc_field(default_factory=list)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "row": self.row,
            "criterion": self.criterion,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "details": self.details,
        }


class Failures(list):
    def check(self, cond, msg):
        if not cond:
            self.append(msg)


# -- rows --------------------------------------------------------------------


def row_thm31(cat: Catalog):
    bad, info = Failures(), []
    for I in cat.tagged("thm31"):
        t = time.perf_counter()
        bad.check(I.geometric.verdict is Verdict.MINIMAL, f"{I.name}: geometric {I.geometric.verdict.value}")
        if I.small:
            bad.check(I.bruteforce.verdict is Verdict.MINIMAL, f"{I.name}: bruteforce {I.bruteforce.verdict.value}")
        dt = time.perf_counter() - t
        bad.check(dt < INSTANCE_BUDGET, f"{I.name}: took {dt:.2f}s")
    info.append(f"{len(cat.tagged('thm31'))} instances")
    info.extend(s for s in cat.skipped if "q=" in s)
    return bad, info


def _replay_ok(I: Instance, report) -> bool:
    if report.witness is None or report.certificate is None:
        return False
    x0, y0 = report.certificate, report.witness
    return covers(codeword(x0, I.D), codeword(y0, I.D)) and la.span_dim([x0, y0], I.field) == 2


def row_thm32(cat: Catalog):
    bad = Failures()
    for I in cat.tagged("thm32"):
        g = I.geometric
        bad.check(g.verdict is Verdict.NOT_MINIMAL, f"{I.name}: {g.verdict.value}")
        bad.check(g.verdict is not Verdict.NOT_MINIMAL or _replay_ok(I, g), f"{I.name}: certificate replay failed")
    return bad, [f"{len(cat.tagged('thm32'))} instances"]


def row_thm33(cat: Catalog):
    bad, info = Failures(), []
    for I in cat.tagged("thm33"):
        bad.check(I.geometric.verdict is Verdict.NOT_MINIMAL, f"{I.name}: {I.geometric.verdict.value}")
        e1 = np.zeros(I.spread.m, dtype=np.int64)
        e1[0] = 1
        v = restriction(e1, I.D).v_dim
        bad.check(v <= I.spread.m - 2, f"{I.name}: dim V(e1, D) = {v}")
        info.append(f"{I.name}: dim V(e1, D) = {v}")
    return bad, info


def row_thm34(cat: Catalog):
    bad = Failures()
    for I in cat.tagged("thm34"):
        bad.check(I.geometric.verdict is Verdict.MINIMAL, f"{I.name}: geometric {I.geometric.verdict.value}")
        bad.check(I.bruteforce.verdict is Verdict.MINIMAL, f"{I.name}: bruteforce {I.bruteforce.verdict.value}")
    return bad, [f"{len(cat.tagged('thm34'))} instances"]


def row_same_weights(cat: Catalog):
    bad, info = Failures(), []
    for A, B in zip(cat.tagged("same-eb"), cat.tagged("same-thm34")):
        bad.check(A.weights == B.weights, f"{A.name} vs {B.name}: {A.weights} != {B.weights}")
        bad.check(A.geometric.verdict is Verdict.NOT_MINIMAL, f"{A.name}: {A.geometric.verdict.value}")
        bad.check(B.geometric.verdict is Verdict.MINIMAL, f"{B.name}: {B.geometric.verdict.value}")
        info.append(f"q={A.q}: weights {sorted(A.weights.items())}")
    return bad, info


def weight_law_violations(I: Instance) -> int:
    q, k, s, n = I.q, I.k, I.s, I.D.n
    Y = la.all_vectors(I.spread.m, I.field)[1:]
    w = np.count_nonzero(evaluate(Y, I.D), axis=1)
    in_dual = np.zeros((len(Y), s), dtype=bool)
    for i, E in enumerate(I.spread.members):
        in_dual[:, i] = ~la.matmul_t(Y, E.basis, I.field).any(axis=1)
    delta = in_dual.sum(axis=1)
    bad = int(np.count_nonzero(delta > 1))
    expected = n - s * (q ** (k - 1) - 1) - delta * (q**k - q ** (k - 1))
    bad += int(np.count_nonzero(w != expected))
    bad += int(np.count_nonzero(delta == 1) != s * (q**k - 1))
    return bad


def row_weight_law(cat: Catalog):
    bad = Failures()
    for I in cat.instances:
        v = weight_law_violations(I)
        bad.check(v == 0, f"{I.name}: {v} violations")
    return bad, [f"{len(cat.instances)} instances"]


def row_dual(cat: Catalog):
    bad = Failures()
    for I in cat.instances:
        try:
            d = dual_spread(I.spread)
            bad.check(d.s == I.s, f"{I.name}: dual has {d.s} members")
        except ValueError as exc:
            bad.append(f"{I.name}: {exc}")
    return bad, [f"{len(cat.instances)} instances"]


def random_messages(rng, count: int, m: int, q: int) -> np.ndarray:
    idx = rng.integers(1, q**m, size=count)
    return la.index_vectors(idx, m, q)


def scalar_multiples(y, F: FieldSpec) -> np.ndarray:
    return la.scale(np.arange(1, F.q)[:, None], np.asarray(y)[None, :], F)


def codeword_oracle_disagreements(I: Instance, samples: int = 200, seed: int = 0) -> int:
    """Compare is_codeword_minimal(y) with the covering definition (no
    nonzero x outside {a y} has supp c(x) inside supp c(y)) on random y."""
    rng = np.random.Generator(np.random.Philox(seed))
    F, m, q = I.field, I.spread.m, I.q
    X = la.all_vectors(m, F)[1:]
    SX = evaluate(X, I.D) != 0
    Y = random_messages(rng, samples, m, q)
    SY = evaluate(Y, I.D) != 0
    bad = 0
    for y, sy in zip(Y, SY):
        covered = ~(SX & ~sy).any(axis=1)
        covered[la.vector_index(scalar_multiples(y, F), q) - 1] = False
        bad += int((not covered.any()) != is_codeword_minimal(y, I.D))
    return bad


def row_oracle(cat: Catalog):
    bad, n = Failures(), 0
    for I in cat.instances:
        if not I.small:
            continue
        n += 1
        bad.check(I.geometric.verdict is I.bruteforce.verdict, f"{I.name}: geometric {I.geometric.verdict.value} vs bruteforce {I.bruteforce.verdict.value}")
        bad.check(
            _same_witness(I),
            f"{I.name}: witnesses differ",
        )
        d = codeword_oracle_disagreements(I)
        bad.check(d == 0, f"{I.name}: {d} per-codeword disagreements")
    return bad, [f"{n} instances, 200 sampled codewords each"]


def _same_witness(I: Instance) -> bool:
    g, b = I.geometric, I.bruteforce
    if g.witness is None or b.witness is None:
        return g.witness is None and b.witness is None
    return np.array_equal(g.witness, b.witness) and np.array_equal(g.certificate, b.certificate)


def hyperplane_mask(y, I: Instance) -> np.ndarray:
    """Membership of each d in H(y), found by enumerating y^perp rather than
    through codeword values."""
    F, m, q = I.field, I.spread.m, I.q
    H = la.span_vectors(la.nullspace([y], F, m), F, m)
    return np.isin(la.vector_index(I.D.vectors, q), la.vector_index(H, q))


def covering_counterexamples(I: Instance, pairs: int = 1000, seed: int = 0) -> tuple:
    """Sample (x, y) and compare covers(c(x), c(y)) with H(y, D) in H(x, D).

    Random pairs rarely cover, so scalar pairs (a y, y) and the geometric
    certificate pair are added to exercise the positive direction.
    """
    rng = np.random.Generator(np.random.Philox(seed))
    F, m, q = I.field, I.spread.m, I.q
    X = random_messages(rng, pairs, m, q)
    Y = random_messages(rng, pairs, m, q)
    a = rng.integers(1, q, size=50)
    X = np.vstack([X, la.scale(a[:, None], Y[:50], F)])
    Y = np.vstack([Y, Y[:50]])
    g = I.geometric
    if g.witness is not None:
        X = np.vstack([X, g.certificate[None, :]])
        Y = np.vstack([Y, g.witness[None, :]])
    CX, CY = evaluate(X, I.D), evaluate(Y, I.D)
    cache = {}

    def H(v):
        key = int(la.vector_index(la.normalize(v, F), q))
        if key not in cache:
            cache[key] = hyperplane_mask(v, I)
        return cache[key]

    bad = positives = 0
    for x, y, cx, cy in zip(X, Y, CX, CY):
        lhs = covers(cx, cy)
        rhs = not np.any(H(y) & ~H(x))
        bad += int(lhs != rhs)
        positives += int(lhs)
    return bad, positives, len(X)


def row_covering(cat: Catalog):
    bad, total_pos = Failures(), 0
    for I in cat.instances:
        b, pos, n = covering_counterexamples(I)
        total_pos += pos
        bad.check(b == 0, f"{I.name}: {b} counterexamples in {n} pairs")
    return bad, [f"{len(cat.instances)} instances, {total_pos} covering pairs seen"]


def row_ab(cat: Catalog):
    bad, info = Failures(), []
    for I in cat.instances:
        ab = ab_bound(I.weights, I.field)
        bad.check(not ab.minimal or I.geometric.minimal, f"{I.name}: AB Minimal but geometric {I.geometric.verdict.value}")
    boundary = [I for I in cat.tagged("thm32") if I.q == 3 and I.k == 2 and I.s == 3]
    bad.check(bool(boundary), "no q=3,k=2,s=3 instance")
    for I in boundary:
        ab = ab_bound(I.weights, I.field)
        w = sorted(I.weights)
        bad.check(w == [12, 18], f"{I.name}: weights {w}")
        bad.check(3 * 12 == 2 * 18 and ab.verdict is Verdict.INCONCLUSIVE, f"{I.name}: ab {ab.verdict.value}")
        bad.check(I.geometric.verdict is Verdict.NOT_MINIMAL, f"{I.name}: geometric {I.geometric.verdict.value}")
    info.append(f"boundary instances: {len(boundary)}")
    return bad, info


def row_monotone(cat: Catalog):
    bad = Failures()
    for I in cat.tagged("mono-up"):
        bad.check(I.geometric.minimal, f"{I.name}: {I.geometric.verdict.value}")
        base = next(J for J in cat.tagged("thm34") if J.q == I.q)
        bad.check(monotonicity_check(base.D, I.D), f"{I.name}: monotonicity inconsistent")
    for I in cat.tagged("mono-down"):
        bad.check(I.geometric.verdict is Verdict.NOT_MINIMAL, f"{I.name}: {I.geometric.verdict.value}")
        parent = next(J for J in cat.tagged("thm33") if J.q == I.q)
        bad.check(monotonicity_check(I.D, parent.D), f"{I.name}: monotonicity inconsistent")
    return bad, [f"{len(cat.tagged('mono-up'))} extensions, {len(cat.tagged('mono-down'))} subfamilies"]


def perp_failures(q: int, m: int, cases: int = 500, seed: int = 0) -> int:
    F = field_of_order(q)
    rng = np.random.Generator(np.random.Philox(seed))
    bad = 0
    for _ in range(cases):
        size = int(rng.integers(0, m + 2))
        S = rng.integers(0, q, size=(size, m))
        N = la.nullspace(S, F, m)
        ok = la.span_dim(S, F) + len(N) == m
        if size and len(N):
            ok &= not la.matmul_t(S, N, F).any()
        bad += int(not ok)
    return bad


def row_structural(cat: Catalog):
    bad = Failures()
    shapes = set()
    for I in cat.instances:
        bad.check(I.D.n == I.s * (I.q**I.k - 1), f"{I.name}: n = {I.D.n}")
        bad.check(I.D.rank == I.spread.m, f"{I.name}: r(D) = {I.D.rank}")
        shapes.add((I.q, I.spread.m))
    for q, m in sorted(shapes):
        f = perp_failures(q, m)
        bad.check(f == 0, f"perp q={q} m={m}: {f} failures")
    return bad, [f"shapes {sorted(shapes)}"]


ROWS = {
    "thm31": (1, row_thm31),
    "thm32": (2, row_thm32),
    "thm33": (3, row_thm33),
    "thm34": (4, row_thm34),
    "same-weights": (5, row_same_weights),
    "weight-law": (6, row_weight_law),
    "dual": (7, row_dual),
    "oracle": (8, row_oracle),
    "prop21": (9, row_covering),
    "ab": (10, row_ab),
    "monotone": (11, row_monotone),
    "structural": (12, row_structural),
}


def run_suite(rows=None, catalog: Catalog | None = None) -> list:
    names = list(ROWS) if not rows else list(rows)
    unknown = [r for r in names if r not in ROWS]
    if unknown:
        raise ValueError(f"unknown rows {unknown}; choose from {list(ROWS)}")
    cat = catalog or build_catalog()
    out = []
    for name in names:
        crit, fn = ROWS[name]
        t = time.perf_counter()
        try:
            failures, info = fn(cat)
        except Exception as exc:  # a crashing row is a failing row
            failures, info = [f"{type(exc).__name__}: {exc}"], []
        out.append(RowResult(name, crit, not failures, list(failures) + list(info), time.perf_counter() - t))
    return out
