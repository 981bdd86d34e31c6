"""Exact arithmetic in Z[1/n] and the residue map onto Z_{n-1}."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import BaseMismatch, NonCanonical, OutOfRange, ParseError


def _strip(a: int, b: int, n: int) -> tuple[int, int]:
    if a == 0:
        return 0, 0
    while a % n == 0:
        a //= n
        b += 1
    return a, b


@total_ordering
@dataclass(frozen=True)
class NAdic:
    """The number ``m * n**e`` with ``n`` not dividing ``m`` (zero is ``(0, 0)``).

    Build values with :func:`canonicalize` or :meth:`from_fraction`; the
    constructor rejects non-canonical pairs.
    """

    n: int
    m: int
    e: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"base must be >= 2, got {self.n}")
        if (self.m, self.e) != _strip(self.m, self.e, self.n):
            raise NonCanonical(f"({self.m}, {self.e}) is not canonical in base {self.n}")

    # -- conversions ---------------------------------------------------
    @classmethod
    def from_fraction(cls, q, n: int) -> NAdic:
        q = Fraction(q)
        num, den = q.numerator, q.denominator
        e = 0
        while den != 1:
            if n % den == 0 and den != 1:
                num *= n // den
                den = 1
                e -= 1
                break
            g = _gcd(den, n)
            if g == 1:
                raise OutOfRange(f"{q} is not in Z[1/{n}]")
            num *= n // g
            den //= g
            e -= 1
        return canonicalize(num, e, n)

    def to_fraction(self) -> Fraction:
        if self.e >= 0:
            return Fraction(self.m * self.n**self.e)
        return Fraction(self.m, self.n ** (-self.e))

    # -- ring operations -----------------------------------------------
    def _check(self, other: NAdic):
        if not isinstance(other, NAdic):
            return NotImplemented
        if other.n != self.n:
            raise BaseMismatch(f"bases {self.n} and {other.n} differ")
        return None

    def __add__(self, other: NAdic) -> NAdic:
        if self._check(other) is NotImplemented:
            return NotImplemented
        e = min(self.e, other.e)
        a = self.m * self.n ** (self.e - e) + other.m * self.n ** (other.e - e)
        return canonicalize(a, e, self.n)

    def __neg__(self) -> NAdic:
        return NAdic(self.n, -self.m, self.e)

    def __sub__(self, other: NAdic) -> NAdic:
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: NAdic) -> NAdic:
        if self._check(other) is NotImplemented:
            return NotImplemented
        return canonicalize(self.m * other.m, self.e + other.e, self.n)

    def __lt__(self, other: NAdic) -> bool:
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self.to_fraction() < other.to_fraction()

    def cmp(self, other: NAdic) -> int:
        self._check(other)
        a, b = self.to_fraction(), other.to_fraction()
        return (a > b) - (a < b)

    def is_unit_power(self) -> bool:
        """True iff the value lies in <n> (mantissa 1)."""
        return self.m == 1

    # -- text / json -----------------------------------------------------
    def __str__(self) -> str:
        return f"{self.m}*{self.n}^{self.e}"

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "e": self.e}

    @classmethod
    def from_json(cls, obj: dict, canonicalize_input: bool = False) -> NAdic:
        try:
            n, m, e = int(obj["n"]), int(obj["m"]), int(obj["e"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad NAdic object {obj!r}") from exc
        if canonicalize_input:
            return canonicalize(m, e, n)
        return cls(n, m, e)

    @classmethod
    def parse(cls, text: str, canonicalize_input: bool = False) -> NAdic:
        match = _TEXT_RE.fullmatch(text.strip())
        if match is None:
            raise ParseError(f"expected 'a*n^b', got {text!r}", column=1)
        m, n, e = (int(g) for g in match.groups())
        if canonicalize_input:
            return canonicalize(m, e, n)
        return cls(n, m, e)


_TEXT_RE = re.compile(r"(-?\d+)\*(\d+)\^(-?\d+)")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def canonicalize(a: int, b: int, n: int) -> NAdic:
    if n < 2:
        raise ValueError(f"base must be >= 2, got {n}")
    m, e = _strip(a, b, n)
    return NAdic(n, m, e)


def arith(op: str, x: NAdic, y: NAdic | None = None):
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "cmp":
        return x.cmp(y)
    raise ValueError(f"unknown operation {op!r}")


@dataclass(frozen=True)
class Residue:
    """An element of Z_{n-1}, stored reduced into ``[0, n-2]``."""

    n: int
    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % (self.n - 1))

    def __add__(self, other: Residue) -> Residue:
        if other.n != self.n:
            raise BaseMismatch(f"bases {self.n} and {other.n} differ")
        return Residue(self.n, self.value + other.value)

    def __sub__(self, other: Residue) -> Residue:
        if other.n != self.n:
            raise BaseMismatch(f"bases {self.n} and {other.n} differ")
        return Residue(self.n, self.value - other.value)

    def __mul__(self, other: Residue) -> Residue:
        if other.n != self.n:
            raise BaseMismatch(f"bases {self.n} and {other.n} differ")
        return Residue(self.n, self.value * other.value)

    def __int__(self) -> int:
        return self.value


def phi(x: NAdic) -> Residue:
    return Residue(x.n, x.m)


def phi_frac(q, n: int) -> int:
    """Residue of a rational in Z[1/n], as a plain int in ``[0, n-2]``.

    Denominators only involve primes dividing ``n``, which are units mod
    ``n - 1``.
    """
    if n == 2:
        return 0
    q = Fraction(q)
    mod = n - 1
    try:
        inv = pow(q.denominator, -1, mod)
    except ValueError:
        raise OutOfRange(f"{q} is not in Z[1/{n}]") from None
    if n % _radical(q.denominator) != 0:
        raise OutOfRange(f"{q} is not in Z[1/{n}]")
    return (q.numerator * inv) % mod


def _radical(d: int) -> int:
    r, p = 1, 2
    while d > 1 and p * p <= d:
        if d % p == 0:
            r *= p
            while d % p == 0:
                d //= p
        p += 1
    if d > 1:
        r *= d
    return r


def in_delta(x: NAdic) -> bool:
    return phi(x).value == 0


def is_nadic(q, n: int) -> bool:
    """Whether a rational lies in Z[1/n]."""
    den = Fraction(q).denominator
    while den != 1:
        g = _gcd(den, n)
        if g == 1:
            return False
        while den % g == 0:
            den //= g
    return True


def mu_orbit(x: NAdic) -> list[NAdic]:
    """Forward orbit of ``x`` under ``x -> n*x mod (n-1)`` on ``[0, n-1)``.

    Stops at the first repeated point, which is the integer fixed point
    ``phi(x)``.
    """
    n = x.n
    p = n - 1
    q = x.to_fraction()
    if not 0 <= q < p:
        raise OutOfRange(f"{q} not in [0, {p})")
    orbit = [x]
    while True:
        nxt = (n * q) % p
        if nxt == q:
            return orbit
        q = nxt
        orbit.append(NAdic.from_fraction(q, n))
