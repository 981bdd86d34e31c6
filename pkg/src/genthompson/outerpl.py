"""Outer classes of PL normalizers: Z_{n-1} x| <<n>>/<n>.

``<<n>>`` is the multiplicative group generated by the primes dividing
``n``; an element is an integer exponent vector over those primes and a
coset of ``<n>`` is that vector modulo the exponent vector of ``n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from sympy import divisors, factorint

from .errors import BaseMismatch, OutOfRange


@dataclass(frozen=True)
class Context:
    n: int
    primes: tuple
    v: tuple  # exponents of n
    m: int
    k: int


def mk(n: int) -> Context:
    """Primes of ``n``, their exponents, and ``n = m**k`` with ``k`` maximal."""
    if n < 2:
        raise OutOfRange("n must be at least 2")
    fac = factorint(n)
    primes = tuple(sorted(fac))
    v = tuple(fac[p] for p in primes)
    k = reduce(math.gcd, v)
    m = math.prod(p ** (e // k) for p, e in zip(primes, v))
    return Context(n, primes, v, m, k)


@dataclass(frozen=True)
class UnitCoset:
    """Coset ``s<n>``; the first exponent is kept in ``[0, v[0])``."""

    n: int
    exps: tuple

    def __post_init__(self):
        v = mk(self.n).v
        if len(self.exps) != len(v):
            raise ValueError("exponent vector has the wrong length")
        q = self.exps[0] // v[0]
        object.__setattr__(self, "exps", tuple(e - q * w for e, w in zip(self.exps, v)))

    @classmethod
    def of(cls, n: int, s) -> UnitCoset:
        """Coset of a positive rational built from the primes of ``n``."""
        s = Fraction(s)
        ctx = mk(n)
        exps = []
        num, den = s.numerator, s.denominator
        for p in ctx.primes:
            e = 0
            while num % p == 0:
                num //= p
                e += 1
            while den % p == 0:
                den //= p
                e -= 1
            exps.append(e)
        if num != 1 or den != 1 or s <= 0:
            raise OutOfRange(f"{s} is not a unit of Z[1/{n}]")
        return cls(n, tuple(exps))

    @classmethod
    def one(cls, n: int) -> UnitCoset:
        return cls(n, (0,) * len(mk(n).primes))

    def __mul__(self, other: UnitCoset) -> UnitCoset:
        if self.n != other.n:
            raise BaseMismatch(f"bases {self.n} and {other.n} differ")
        return UnitCoset(self.n, tuple(a + b for a, b in zip(self.exps, other.exps)))

    def inverse(self) -> UnitCoset:
        return UnitCoset(self.n, tuple(-a for a in self.exps))

    def is_one(self) -> bool:
        return not any(self.exps)

    def value(self) -> Fraction:
        """The canonical representative as a rational."""
        return math.prod((Fraction(p) ** e for p, e in zip(mk(self.n).primes, self.exps)), start=Fraction(1))

    def __str__(self) -> str:
        return str(self.value())


def phi_unit(s: UnitCoset) -> int:
    mod = s.n - 1
    if mod == 1:
        return 0
    out = 1
    for p, e in zip(mk(s.n).primes, s.exps):
        out = out * pow(p, e, mod) % mod
    return out


@dataclass(frozen=True)
class OutPLElem:
    """Pair ``(a, s)`` acting on Z_{n-1} by ``g -> g*phi(s) + a``."""

    n: int
    a: int
    s: UnitCoset

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % (self.n - 1))

    @classmethod
    def make(cls, n: int, a: int, s) -> OutPLElem:
        return cls(n, a, s if isinstance(s, UnitCoset) else UnitCoset.of(n, s))

    def is_identity(self) -> bool:
        return self.a == 0 and self.s.is_one()

    def __str__(self) -> str:
        return f"({self.a}, {self.s})"


def identity(n: int) -> OutPLElem:
    return OutPLElem(n, 0, UnitCoset.one(n))


def aff_mul(x: OutPLElem, y: OutPLElem) -> OutPLElem:
    if x.n != y.n:
        raise BaseMismatch(f"bases {x.n} and {y.n} differ")
    return OutPLElem(x.n, x.a * phi_unit(y.s) + y.a, x.s * y.s)


def aff_inverse(x: OutPLElem) -> OutPLElem:
    mod = x.n - 1
    inv = pow(phi_unit(x.s), -1, mod) if mod > 1 else 0
    return OutPLElem(x.n, -x.a * inv, x.s.inverse())


def aff_pow(x: OutPLElem, u: int) -> OutPLElem:
    if u < 0:
        return aff_pow(aff_inverse(x), -u)
    out = identity(x.n)
    base = x
    while u:
        if u & 1:
            out = aff_mul(out, base)
        base = aff_mul(base, base)
        u >>= 1
    return out


def is_torsion_coset(s: UnitCoset) -> bool:
    """Whether ``s`` lies in ``<m><n>`` (exponents a multiple of those of ``m``)."""
    ctx = mk(s.n)
    em = [e // ctx.k for e in ctx.v]
    t, r = divmod(s.exps[0], em[0])
    return r == 0 and all(e == t * w for e, w in zip(s.exps, em))


def torsion_order(x: OutPLElem):
    """Least ``u > 0`` with ``x**u`` trivial, or ``math.inf``."""
    if not is_torsion_coset(x.s):
        return math.inf
    bound = mk(x.n).k * (x.n - 1)
    y = x
    for u in range(1, bound + 1):
        if y.is_identity():
            return u
        y = aff_mul(y, x)
    raise AssertionError("torsion element exceeded the order bound")


def d_subgroup(n: int) -> frozenset:
    """Subgroup of the units mod ``n-1`` generated by the primes of ``n``."""
    mod = n - 1
    if mod == 1:
        return frozenset({0})
    gens = [p % mod for p in mk(n).primes]
    seen = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g % mod
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def torsion_table(n: int) -> list:
    """Rows ``(a, m**d, order)`` over all residues ``a`` and divisors ``d`` of ``k``."""
    ctx = mk(n)
    rows = []
    for d in divisors(ctx.k):
        for a in range(n - 1):
            x = OutPLElem.make(n, a, ctx.m**d)
            rows.append((a, ctx.m**d, torsion_order(x)))
    return rows
