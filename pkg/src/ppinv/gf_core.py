"""Exact arithmetic in GF(p^n).

Field elements are plain integers in ``[0, q)``, q = p^n: the coefficient
vector (a0, ..., a_{n-1}) of an element written over F_p is packed in base
p as ``sum(a_i * p**i)``.  Index 0 is the additive identity and index 1 the
multiplicative identity, and all I/O (JSON, CLI) uses this encoding.

A :class:`FieldCtx` freezes the modulus and, for fields up to 2^16
elements, discrete exp/log tables so multiplication and powering are O(1).
Everything here is a pure function of immutable inputs; contexts can be
shared freely between threads.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import NotCoprime, NotDivisor, NotPrime, Reducible, TooLarge

# Brute-force scans refuse fields above this bound unless overridden.
DEFAULT_ENUM_BOUND = 1 << 20

# exp/log tables are built eagerly below this size; larger fields fall back
# to direct polynomial arithmetic per operation.
_LOG_TABLE_LIMIT = 1 << 16


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def _prime_factors(m: int) -> tuple:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return tuple(out)


def _poly_rem(a: list, b: list, p: int) -> list:
    """Remainder of a modulo b over F_p; coefficient lists low-to-high."""
    a = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            factor = (c * inv_lead) % p
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - factor * b[j]) % p
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= n/2."""
    n = len(coeffs) - 1
    if n == 1:
        return True
    if coeffs[0] == 0:
        return False
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            rem = _poly_rem(coeffs, divisor, p)
            if len(rem) == 1 and rem[0] == 0:
                return False
    return True


def _default_modulus(p: int, n: int) -> tuple:
    """Lexicographically least monic irreducible (coefficients compared
    low-to-high); for n = 1 this is the polynomial x."""
    if n == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=n):
        if low[0] == 0:
            continue  # divisible by x
        cand = low + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


@dataclass(frozen=True)
class FieldSpec:
    """Description of GF(p^n): characteristic, degree, modulus (low-to-high,
    length n+1, monic)."""

    p: int
    n: int
    modulus: tuple


@dataclass(frozen=True)
class MuSubgroup:
    """The subgroup of ell-th roots of unity in F_q^*, sorted ascending."""

    ell: int
    elements: tuple


class FieldCtx:
    """Immutable arithmetic context for GF(p^n).

    Not constructed directly; use :func:`build_field`.
    """

    __slots__ = ("spec", "p", "n", "q", "modulus", "_exp", "_log")

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.n = spec.n
        self.q = spec.p ** spec.n
        self.modulus = spec.modulus
        if self.q <= _LOG_TABLE_LIMIT:
            exp, log = self._build_log_tables()
            self._exp = exp
            self._log = log
        else:
            self._exp = None
            self._log = None

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"FieldCtx(GF({self.p}^{self.n}))"

    # element <-> digit vector

    def digits(self, x: int) -> list:
        p = self.p
        out = []
        for _ in range(self.n):
            x, r = divmod(x, p)
            out.append(r)
        return out

    def pack(self, digs: Sequence[int]) -> int:
        acc = 0
        for d in reversed(digs):
            acc = acc * self.p + d
        return acc

    # arithmetic

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.n == 1:
            return (a + b) % self.p
        da, db = self.digits(a), self.digits(b)
        p = self.p
        return self.pack([(u + v) % p for u, v in zip(da, db)])

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.n == 1:
            return (-a) % self.p
        p = self.p
        return self.pack([(-u) % p for u in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def _raw_mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        p, n = self.p, self.n
        if n == 1:
            return (a * b) % p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    if bj:
                        prod[i + j] = (prod[i + j] + ai * bj) % p
        mod = self.modulus
        for i in range(2 * n - 2, n - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(n):
                    prod[i - n + j] = (prod[i - n + j] - c * mod[j]) % p
        return self.pack(prod[:n])

    def _raw_pow(self, x: int, e: int) -> int:
        acc = 1
        base = x
        while e:
            if e & 1:
                acc = self._raw_mul(acc, base)
            base = self._raw_mul(base, base)
            e >>= 1
        return acc

    def _build_log_tables(self):
        q = self.q
        if q == 2:
            return [1], [-1, 0]
        fac = _prime_factors(q - 1)
        gen = None
        for cand in range(2, q):
            if all(self._raw_pow(cand, (q - 1) // f) != 1 for f in fac):
                gen = cand
                break
        exp = [1] * (q - 1)
        log = [-1] * q
        cur = 1
        for i in range(q - 1):
            exp[i] = cur
            log[cur] = i
            cur = self._raw_mul(cur, gen)
        return exp, log

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        exp = self._exp
        if exp is not None:
            return exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._raw_mul(a, b)

    def inv(self, a: int) -> int:
        """Strict multiplicative inverse; zero is a caller bug here."""
        if a == 0:
            raise ZeroDivisionError("inverse of 0 requested")
        exp = self._exp
        if exp is not None:
            return exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self._raw_pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, x: int, e: int) -> int:
        """x^e with exponents acting mod q-1 on F_q^*; 0^0 = 1, 0^e = 0."""
        if x == 0:
            return 1 if e == 0 else 0
        qm1 = self.q - 1
        e %= qm1
        exp = self._exp
        if exp is not None:
            return exp[(self._log[x] * e) % qm1]
        return self._raw_pow(x, e)

    def frob(self, x: int, k: int) -> int:
        """The k-fold Frobenius x^(p^k)."""
        return self.pow(x, self.p ** k)

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)


def build_field(p: int, n: int = 1, modulus: Optional[Sequence[int]] = None,
                *, max_q: int = DEFAULT_ENUM_BOUND) -> FieldCtx:
    """Construct GF(p^n).

    When ``modulus`` is omitted the lexicographically least monic
    irreducible of degree n over F_p (coefficients compared low-to-high) is
    selected, so construction is reproducible without polynomial tables.
    """
    if not isinstance(p, int) or not _is_prime(p):
        raise NotPrime(f"p = {p} is not prime")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"extension degree must be a positive integer, got {n}")
    q = p ** n
    if q > max_q:
        raise TooLarge(f"q = {q} exceeds the enumeration bound {max_q}")
    if modulus is None:
        modulus = _default_modulus(p, n)
    else:
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != n + 1:
            raise ValueError(f"modulus must have degree {n} (length {n + 1})")
        if any(c < 0 or c >= p for c in modulus):
            raise ValueError("modulus coefficients must lie in [0, p)")
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        if not _is_irreducible(modulus, p):
            raise Reducible(f"modulus {list(modulus)} factors over F_{p}")
    return FieldCtx(FieldSpec(p, n, modulus))


def f_inv(ctx: FieldCtx, x: int) -> int:
    """x^(q-2): the multiplicative inverse for x != 0, with 0 mapped to 0."""
    if x == 0:
        return 0
    return ctx.inv(x)


def f_pow(ctx: FieldCtx, x: int, e: int) -> int:
    """x^e (e may be negative; exponents act mod q-1 on nonzero x).

    For x = 0 the result is 0 when e != 0 and 1 when e = 0.
    """
    return ctx.pow(x, e)


def rel_trace(ctx: FieldCtx, d: int, x: int) -> int:
    """Relative trace from GF(p^n) onto its degree-d subfield:
    sum of x^(p^(d*i)) for i < n/d."""
    if d < 1 or ctx.n % d != 0:
        raise NotDivisor(f"trace degree {d} does not divide n = {ctx.n}")
    acc = 0
    cur = x
    for _ in range(ctx.n // d):
        acc = ctx.add(acc, cur)
        cur = ctx.frob(cur, d)
    assert ctx.frob(acc, d) == acc  # result lies in the subfield
    return acc


def mu_subgroup(ctx: FieldCtx, ell: int) -> MuSubgroup:
    """The ell-th roots of unity, by filtering all of F_q^*."""
    if ell < 1 or (ctx.q - 1) % ell != 0:
        raise NotDivisor(f"ell = {ell} does not divide q - 1 = {ctx.q - 1}")
    elements = tuple(x for x in ctx.units() if ctx.pow(x, ell) == 1)
    assert len(elements) == ell
    return MuSubgroup(ell, elements)


def ext_gcd(s: int, r: int) -> tuple:
    """The unique (a, b) with a*s + b*r = 1 and 0 <= a < r."""
    if s < 1 or r < 1:
        raise ValueError("ext_gcd expects positive integers")
    if math.gcd(s, r) != 1:
        raise NotCoprime(f"gcd({s}, {r}) != 1")
    a = pow(s, -1, r) if r > 1 else 0
    b = (1 - a * s) // r
    return a, b


def subfield_elements(ctx: FieldCtx, d: int) -> tuple:
    """All elements of the degree-d subfield (fixed points of x -> x^(p^d))."""
    if d < 1 or ctx.n % d != 0:
        raise NotDivisor(f"subfield degree {d} does not divide n = {ctx.n}")
    return tuple(x for x in ctx.elements() if ctx.frob(x, d) == x)


def field_to_json(ctx: FieldCtx) -> dict:
    return {"p": ctx.p, "n": ctx.n, "modulus": list(ctx.modulus)}


def field_from_json(doc: dict, *, max_q: int = DEFAULT_ENUM_BOUND) -> FieldCtx:
    """Build a field from ``{"p": int, "n": int, "modulus": [int,...]?}``."""
    return build_field(int(doc["p"]), int(doc.get("n", 1)),
                       doc.get("modulus"), max_q=max_q)
