"""Finite field arithmetic over GF(p^e).

Elements are integer codes in ``[0, q)``.  The base-p digits of a code are
the coefficients of a polynomial over GF(p), lowest digit = constant term,
reduced modulo a monic irreducible ``modulus`` of degree ``e``.

All element operations accept either Python ints or numpy integer arrays
(broadcasting as usual), so the same calls serve scalar code and the
vectorized hot loops in :mod:`minspread.linalg` and :mod:`minspread.code`.

Polynomials over a field are tuples of element codes, low degree first,
with no trailing zeros (the zero polynomial is ``()``).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

import numpy as np

MAX_ORDER = 1 << 16

Poly = tuple


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The finite field F_q, q = p**e, with a fixed modulus.

    Equality is by ``(p, e, modulus)``; the log/antilog tables are derived.
    """

    p: int
    e: int
    modulus: tuple
    q: int = dc_field(init=False)
    _exp: np.ndarray = dc_field(init=False, repr=False)
    _log: np.ndarray = dc_field(init=False, repr=False)

    def __post_init__(self):
        p, e = int(self.p), int(self.e)
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if e < 1:
            raise FieldError(f"extension degree must be >= 1, got {e}")
        q = p**e
        if q > MAX_ORDER:
            raise FieldError(f"field order {p}^{e} = {q} exceeds {MAX_ORDER}")
        mod = tuple(int(c) for c in self.modulus)
        if len(mod) != e + 1 or mod[-1] != 1 or any(not 0 <= c < p for c in mod):
            raise FieldError(f"modulus {list(mod)} is not a monic degree-{e} polynomial over F_{p}")
        if e == 1:
            if mod != (0, 1):
                raise FieldError("prime fields use the modulus x, i.e. [0, 1]")
        elif not is_irreducible(mod, prime_field(p)):
            raise FieldError(f"modulus {list(mod)} is reducible over F_{p}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "q", q)
        exp, log = self._build_tables()
        object.__setattr__(self, "_exp", exp)
        object.__setattr__(self, "_log", log)

    def __eq__(self, other):
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, e={self.e}, modulus={list(self.modulus)})"

    # -- construction helpers -------------------------------------------

    def _digits(self, a: int) -> list:
        p = self.p
        out = []
        for _ in range(self.e):
            out.append(a % p)
            a //= p
        return out

    def _undigits(self, ds: Sequence[int]) -> int:
        a = 0
        for d in reversed(ds):
            a = a * self.p + d
        return a

    def _slow_mul(self, a: int, b: int) -> int:
        # schoolbook product of digit polynomials, reduced by the modulus
        p, e, mod = self.p, self.e, self.modulus
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for deg in range(2 * e - 2, e - 1, -1):
            c = prod[deg]
            if c:
                for i in range(e + 1):
                    prod[deg - e + i] = (prod[deg - e + i] - c * mod[i]) % p
        return self._undigits(prod[:e])

    def _xor_mul(self, a: int, b: int) -> int:
        e = self.e
        red = self._undigits(self.modulus[:e]) | (1 << e)
        out = 0
        while b:
            if b & 1:
                out ^= a
            b >>= 1
            a <<= 1
            if a >> e:
                a ^= red
        return out

    def _powers(self, g: int) -> list:
        # g^0, g^1, ... up to (excluding) the first return to 1
        q, p = self.q, self.p
        powers = [1]
        if self.e == 1 or p == 2:
            step = (lambda x: x * g % p) if self.e == 1 else (lambda x: self._xor_mul(x, g))
            x = g
            while x != 1 and len(powers) < q:
                powers.append(x)
                x = step(x)
            return powers
        # odd p, e > 1: multiplication by g is an F_p-linear map on digit vectors
        G = np.array([self._digits(self._slow_mul(p**i, g)) for i in range(self.e)])
        place = p ** np.arange(self.e)
        v = np.array(self._digits(g))
        x = g
        while x != 1 and len(powers) < q:
            powers.append(x)
            v = v @ G % p
            x = int(v @ place)
        return powers

    def _build_tables(self):
        q = self.q
        if q == 2:
            return np.array([1, 1], dtype=np.int64), np.zeros(2, dtype=np.int64)
        for g in range(2, q):
            powers = self._powers(g)
            if len(powers) == q - 1:
                exp = np.array(powers + powers[:1], dtype=np.int64)
                log = np.zeros(q, dtype=np.int64)
                log[exp[: q - 1]] = np.arange(q - 1)
                return exp, log
        raise FieldError("no primitive element found")  # unreachable for a field

    # -- element arithmetic ---------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % self.p
        p, out, place = self.p, 0, 1
        for _ in range(self.e):
            out = out + ((a // place % p + b // place % p) % p) * place
            place *= p
        return out

    def neg(self, a):
        if self.p == 2:
            return a
        if self.e == 1:
            return (-a) % self.p
        p, out, place = self.p, 0, 1
        for _ in range(self.e):
            out = out + ((-(a // place % p)) % p) * place
            place *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        if isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer)):
            if a == 0 or b == 0:
                return 0
            return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])
        a = np.asarray(a)
        b = np.asarray(b)
        r = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("0 has no inverse in a field")
        if isinstance(a, (int, np.integer)):
            return int(self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)])
        return self._exp[(self.q - 1 - self._log[np.asarray(a)]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        if a == 0:
            return 1 if n == 0 else 0
        return int(self._exp[(int(self._log[a]) * n) % (self.q - 1)])

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        try:
            return cls(int(obj["p"]), int(obj["e"]), tuple(obj["modulus"]))
        except (KeyError, TypeError) as exc:
            raise FieldError(f"malformed field description: {obj!r}") from exc


_PRIME_FIELDS: dict = {}


def prime_field(p: int) -> FieldSpec:
    if p not in _PRIME_FIELDS:
        _PRIME_FIELDS[p] = FieldSpec(p, 1, (0, 1))
    return _PRIME_FIELDS[p]


def make_field(p: int, e: int = 1) -> FieldSpec:
    """Build F_{p^e} with the smallest monic irreducible modulus.

    >>> make_field(2, 2).modulus
    (1, 1, 1)
    """
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if e < 1:
        raise FieldError(f"extension degree must be >= 1, got {e}")
    if p**e > MAX_ORDER:
        raise FieldError(f"field order {p}^{e} exceeds {MAX_ORDER}")
    if e == 1:
        return prime_field(p)
    return FieldSpec(p, e, find_irreducible(prime_field(p), e))


# -- polynomials over a field ---------------------------------------------


def poly_trim(f: Sequence[int]) -> Poly:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(int(c) for c in f)


def poly_mod(a: Sequence[int], b: Sequence[int], F: FieldSpec) -> Poly:
    """Remainder of ``a`` divided by nonzero ``b``."""
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(poly_trim(a))
    db = len(b) - 1
    lead_inv = F.inv(b[-1])
    while len(r) - 1 >= db and r:
        c = F.mul(r[-1], lead_inv)
        shift = len(r) - 1 - db
        for i, bc in enumerate(b):
            r[shift + i] = F.sub(r[shift + i], F.mul(c, bc))
        r = list(poly_trim(r))
    return tuple(r)


def poly_mul(a: Sequence[int], b: Sequence[int], F: FieldSpec) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return poly_trim(out)


def poly_eval(f: Sequence[int], x: int, F: FieldSpec) -> int:
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def monic_polys(F: FieldSpec, degree: int) -> Iterator[Poly]:
    """All monic polynomials of ``degree``, in increasing order of
    ``sum(c_i * q**i)`` (constant term least significant)."""
    q = F.q
    for idx in range(q**degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(idx % q)
            idx //= q
        yield tuple(coeffs) + (1,)


def is_irreducible(f: Sequence[int], F: FieldSpec) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    f = poly_trim(f)
    if len(f) < 2:
        raise FieldError("irreducibility is defined for degree >= 1")
    if f[-1] != 1:
        raise FieldError(f"polynomial {list(f)} is not monic")
    n = len(f) - 1
    for d in range(1, n // 2 + 1):
        for g in monic_polys(F, d):
            if not poly_mod(f, g, F):
                return False
    return True


def find_irreducible(F: FieldSpec, k: int) -> Poly:
    """Smallest monic irreducible of degree ``k`` over ``F`` in the
    :func:`monic_polys` order."""
    if k < 1:
        raise FieldError(f"degree must be >= 1, got {k}")
    for f in monic_polys(F, k):
        if is_irreducible(f, F):
            return f
    raise FieldError(f"no irreducible polynomial of degree {k}")  # unreachable
