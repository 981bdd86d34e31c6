"""Exact eventually-affine PL homeomorphisms of the real line.

Maps act on the right: ``compose(f, g)`` sends ``x`` to ``(x f) g``.
Coordinates and slopes are :class:`fractions.Fraction`; membership in the
various Thompson-type groups is a predicate, not part of the type.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    BadDivisor,
    BaseMismatch,
    IncompatibleResidues,
    NotAscending,
    NotInAn,
    NotResiduePreserving,
    ParseError,
    PeriodMismatch,
    ResidueMismatch,
    SlopeCosetMixed,
    SupportTooWide,
)
from .nadic import NAdic, Residue, is_nadic, phi_frac

ONE = Fraction(1)
ZERO = Fraction(0)


def _frac(v) -> Fraction:
    if isinstance(v, NAdic):
        return v.to_fraction()
    return Fraction(v)


def is_power_of(q: Fraction, n: int) -> bool:
    """True iff ``q`` is ``n**k`` for some integer ``k``."""
    q = Fraction(q)
    if q <= 0:
        return False
    a, b = q.numerator, q.denominator
    if a != 1 and b != 1:
        return False
    v = a if b == 1 else b
    while v % n == 0:
        v //= n
    return v == 1


def log_n(q: Fraction, n: int) -> int:
    """Exponent ``k`` with ``q == n**k``; caller guarantees it exists."""
    q = Fraction(q)
    k = 0
    if q >= 1:
        v = q.numerator
        while v > 1:
            v //= n
            k += 1
        return k
    v = q.denominator
    while v > 1:
        v //= n
        k -= 1
    return k


def is_unit(q: Fraction, n: int) -> bool:
    """True iff ``q`` is a positive unit of Z[1/n]."""
    q = Fraction(q)
    return q > 0 and is_nadic(q, n) and is_nadic(1 / q, n)


@dataclass(frozen=True)
class PLMap:
    """PL homeomorphism of R with finitely many breaks.

    ``points`` lists exactly the breaks ``(x, y)``; left of the first the
    map has slope ``ls`` and right of the last slope ``rs``.  A map with no
    breaks is ``x -> ls*x + offset`` (and then ``ls == rs``).
    """

    n: int
    points: tuple = ()
    ls: Fraction = ONE
    rs: Fraction = ONE
    offset: Fraction = ZERO

    # -- construction ------------------------------------------------------
    @classmethod
    def from_points(cls, n: int, pts: Iterable, ls=ONE, rs=ONE, offset=None) -> PLMap:
        """Build the canonical map through ``pts`` with the given tail slopes.

        Points where the slope does not change are dropped.  ``offset`` is
        only consulted when ``pts`` is empty.
        """
        pts = [(_frac(x), _frac(y)) for x, y in pts]
        ls, rs = Fraction(ls), Fraction(rs)
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not (x1 > x0 and y1 > y0):
                raise NotAscending("breakpoints must be strictly ascending in x and y")
        if ls <= 0 or rs <= 0:
            raise NotAscending("tail slopes must be positive")
        if not pts:
            if ls != rs:
                raise ValueError("a map without breaks needs equal tail slopes")
            return cls(n, (), ls, rs, Fraction(offset or 0))
        slopes = [ls]
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            slopes.append((y1 - y0) / (x1 - x0))
        slopes.append(rs)
        kept = tuple(p for i, p in enumerate(pts) if slopes[i] != slopes[i + 1])
        if not kept:
            x0, y0 = pts[0]
            return cls(n, (), ls, ls, y0 - ls * x0)
        return cls(n, kept, ls, rs, ZERO)

    @classmethod
    def affine(cls, n: int, slope=ONE, offset=ZERO) -> PLMap:
        return cls(n, (), Fraction(slope), Fraction(slope), Fraction(offset))

    # -- basic accessors ---------------------------------------------------
    @cached_property
    def xs(self) -> list:
        return [p[0] for p in self.points]

    @cached_property
    def ys(self) -> list:
        return [p[1] for p in self.points]

    def slopes(self) -> list:
        """All slopes from left to right, tails included."""
        out = [self.ls]
        for (x0, y0), (x1, y1) in zip(self.points, self.points[1:]):
            out.append((y1 - y0) / (x1 - x0))
        out.append(self.rs)
        return out

    def is_identity(self) -> bool:
        return not self.points and self.ls == 1 and self.offset == 0

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x) -> Fraction:
        x = _frac(x)
        if not self.points:
            return self.ls * x + self.offset
        xs = self.xs
        if x <= xs[0]:
            return self.ys[0] + self.ls * (x - xs[0])
        if x >= xs[-1]:
            return self.ys[-1] + self.rs * (x - xs[-1])
        i = bisect_right(xs, x)
        x0, y0 = self.points[i - 1]
        x1, y1 = self.points[i]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def preimage(self, y) -> Fraction:
        y = _frac(y)
        if not self.points:
            return (y - self.offset) / self.ls
        ys = self.ys
        if y <= ys[0]:
            return self.xs[0] + (y - ys[0]) / self.ls
        if y >= ys[-1]:
            return self.xs[-1] + (y - ys[-1]) / self.rs
        i = bisect_right(ys, y)
        x0, y0 = self.points[i - 1]
        x1, y1 = self.points[i]
        return x0 + (x1 - x0) * (y - y0) / (y1 - y0)

    def slope_at(self, x, side: str = "right") -> Fraction:
        """One-sided derivative at ``x``."""
        x = _frac(x)
        if not self.points:
            return self.ls
        xs = self.xs
        i = bisect_right(xs, x) if side == "right" else bisect_left(xs, x)
        return self.slopes()[i]

    # -- tails -------------------------------------------------------------
    def left_shift(self):
        """Translation amount near -inf, or None if the left tail is not a translation."""
        if self.ls != 1:
            return None
        if not self.points:
            return self.offset
        return self.ys[0] - self.xs[0]

    def right_shift(self):
        if self.rs != 1:
            return None
        if not self.points:
            return self.offset
        return self.ys[-1] - self.xs[-1]

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "n": self.n,
            "breaks": [{"x": _qjson(x), "y": _qjson(y)} for x, y in self.points],
            "ls": _qjson(self.ls),
            "rs": _qjson(self.rs),
            "offset": _qjson(self.offset),
        }

    @classmethod
    def from_json(cls, obj: dict) -> PLMap:
        try:
            pts = [(_qparse(b["x"]), _qparse(b["y"])) for b in obj["breaks"]]
            f = cls.from_points(
                int(obj["n"]), pts, _qparse(obj["ls"]), _qparse(obj["rs"]),
                _qparse(obj.get("offset", {"num": 0, "den": 1})),
            )
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad PL map object: {exc}") from exc
        return f

    def __str__(self) -> str:
        if not self.points:
            return f"PLMap(n={self.n}, x -> {self.ls}*x + {self.offset})"
        pts = ", ".join(f"({x}, {y})" for x, y in self.points)
        return f"PLMap(n={self.n}, ls={self.ls}, [{pts}], rs={self.rs})"


def _qjson(q: Fraction) -> dict:
    return {"num": q.numerator, "den": q.denominator}


def _qparse(obj) -> Fraction:
    if isinstance(obj, dict):
        if "num" in obj:
            return Fraction(int(obj["num"]), int(obj["den"]))
        if "m" in obj:
            return NAdic.from_json(obj).to_fraction()
    if isinstance(obj, (int, str)):
        return Fraction(obj)
    raise ParseError(f"cannot read a rational from {obj!r}")


# -- atoms ---------------------------------------------------------------

def identity(n: int) -> PLMap:
    return PLMap(n)


def translation(n: int, r) -> PLMap:
    return PLMap.affine(n, ONE, _frac(r))


def generator(n: int, i=0) -> PLMap:
    """The map that is the identity left of ``i``, slope ``n`` on ``[i, i+1]``."""
    i = _frac(i)
    return PLMap(n, ((i, i), (i + 1, i + n)), ONE, ONE, ZERO)


def atom(kind: str, n: int, param=None) -> PLMap:
    if kind in ("g", "generator"):
        return generator(n, param or 0)
    if kind in ("t", "translation"):
        return translation(n, param)
    if kind in ("id", "identity"):
        return identity(n)
    raise ValueError(f"unknown atom kind {kind!r}")


# -- group operations ----------------------------------------------------

def _same_base(f: PLMap, g: PLMap):
    if f.n != g.n:
        raise BaseMismatch(f"bases {f.n} and {g.n} differ")


def compose(*maps: PLMap) -> PLMap:
    """Left-to-right composite: ``x`` goes through the first map first."""
    if not maps:
        raise ValueError("compose needs at least one map")
    maps = list(maps)
    # balanced pairing keeps intermediate maps small for long products
    while len(maps) > 1:
        nxt = [_compose2(a, b) for a, b in zip(maps[::2], maps[1::2])]
        if len(maps) % 2:
            nxt.append(maps[-1])
        maps = nxt
    return maps[0]


def _compose2(f: PLMap, g: PLMap) -> PLMap:
    _same_base(f, g)
    if f.is_identity():
        return g
    if g.is_identity():
        return f
    ls, rs = f.ls * g.ls, f.rs * g.rs
    if not f.points and not g.points:
        return PLMap.affine(f.n, ls, g.eval(f.offset))
    # breaks of f keep their known images; breaks of g are pulled back
    mid = dict(f.points)
    for y in g.xs:
        x = f.preimage(y)
        if x not in mid:
            mid[x] = y
    pts = sorted((x, g.eval(y)) for x, y in mid.items())
    return PLMap.from_points(f.n, pts, ls, rs)


def inverse(f: PLMap) -> PLMap:
    if not f.points:
        return PLMap.affine(f.n, 1 / f.ls, -f.offset / f.ls)
    return PLMap(f.n, tuple((y, x) for x, y in f.points), 1 / f.ls, 1 / f.rs, ZERO)


def conjugate(f: PLMap, h: PLMap) -> PLMap:
    """``h^-1 f h``."""
    return compose(inverse(h), f, h)


def power(f: PLMap, k: int) -> PLMap:
    base = f if k >= 0 else inverse(f)
    out = identity(f.n)
    for _ in range(abs(k)):
        out = _compose2(out, base)
    return out


# -- membership ----------------------------------------------------------

def in_A(f: PLMap) -> bool:
    n = f.n
    if not all(is_power_of(s, n) for s in (f.ls, f.rs) + tuple(f.slopes())):
        return False
    if f.points:
        return all(is_nadic(x, n) and is_nadic(y, n) for x, y in f.points)
    return is_nadic(f.offset, n)


def _rho_raw(f: PLMap) -> int:
    n = f.n
    r0 = (phi_frac(f.eval(0), n) - 0) % (n - 1)
    r1 = (phi_frac(f.eval(1), n) - 1) % (n - 1)
    if r0 != r1:
        raise NotInAn("residue displacement differs at the two sample points")
    return r0


def rho(f: PLMap) -> Residue:
    """Residue displacement ``(x f)phi - x phi`` of an element of A_n."""
    if not in_A(f):
        raise NotInAn("map is not in A_n")
    return Residue(f.n, _rho_raw(f))


def in_B(f: PLMap) -> bool:
    return in_A(f) and _rho_raw(f) == 0


def _tail_multiple(shift, step) -> bool:
    return shift is not None and shift.denominator == 1 and shift.numerator % step == 0


def is_identity_left_of(f: PLMap, a) -> bool:
    if f.is_identity():
        return True
    return f.left_shift() == 0 and f.points and f.xs[0] >= _frac(a)


def support_in(f: PLMap, a, b) -> bool:
    """Whether ``f`` is the identity outside ``[a, b]``."""
    if f.is_identity():
        return True
    return (
        f.left_shift() == 0 and f.right_shift() == 0
        and f.xs[0] >= _frac(a) and f.xs[-1] <= _frac(b)
    )


def membership(f: PLMap, which: str, a=None, b=None) -> bool:
    """Test ``f`` against one of the named groups.

    ``which`` is one of ``A``, ``B``, ``F`` (F_n), ``Finf`` (F_{n,oo}),
    ``Fminf`` (F_{n,-oo}), ``F0`` (F_{n,0}), ``Fi`` (F_{n,a}), ``F00``
    (F_n^0, identity near both ends), ``closed`` (support in [0, n-1]),
    ``support`` (support in [a, b]) or ``bounded``.
    """
    n = f.n
    p = n - 1
    if which == "A":
        return in_A(f)
    if which == "B":
        return in_B(f)
    if which == "support":
        return support_in(f, a, b)
    if which == "bounded":
        return f.is_identity() or (f.left_shift() == 0 and f.right_shift() == 0)
    if not in_A(f):
        return False
    left, right = f.left_shift(), f.right_shift()
    if which == "F":
        return _tail_multiple(left, 1) and _tail_multiple(right, 1)
    if not _tail_multiple(right, p):
        return False
    if which == "Finf":
        return _tail_multiple(left, p)
    if which == "Fminf":
        return left == 0
    if which == "F0":
        return bool(is_identity_left_of(f, 0))
    if which == "Fi":
        return bool(is_identity_left_of(f, a))
    if which == "F00":
        return left == 0 and right == 0
    if which == "closed":
        return support_in(f, 0, p)
    raise ValueError(f"unknown group {which!r}")


# -- residue permutation -------------------------------------------------

@dataclass(frozen=True)
class AffineResidue:
    """The map ``r -> r*mult + shift`` on Z_{n-1}."""

    n: int
    shift: int
    mult: int

    def apply(self, r: int) -> int:
        return (r * self.mult + self.shift) % (self.n - 1)

    def then(self, other: AffineResidue) -> AffineResidue:
        """Left-to-right product: first ``self`` then ``other``."""
        m = self.n - 1
        return AffineResidue(self.n, (self.shift * other.mult + other.shift) % m,
                             (self.mult * other.mult) % m)

    def permutation(self) -> tuple:
        return tuple(self.apply(r) for r in range(self.n - 1))

    def to_json(self) -> dict:
        return {"n": self.n, "shift": self.shift, "mult": self.mult,
                "permutation": list(self.permutation())}


def pi_map(f) -> AffineResidue:
    """Action of ``f`` on the residues of points of Z[1/n]."""
    if isinstance(f, PeriodicPLMap):
        f = to_window(f, -f.period, 2 * f.period)
    n = f.n
    slopes = f.slopes()
    if not all(is_unit(s, n) for s in slopes):
        raise SlopeCosetMixed("a slope is not a unit of Z[1/n]")
    if not all(is_power_of(s / slopes[0], n) for s in slopes):
        raise SlopeCosetMixed("slopes lie in more than one coset of <n>")
    if f.points and not all(is_nadic(x, n) and is_nadic(y, n) for x, y in f.points):
        raise NotResiduePreserving("a break is outside Z[1/n]")
    if n == 2:
        return AffineResidue(n, 0, 0)
    mult = phi_frac(slopes[0], n)
    shift = phi_frac(f.eval(0), n)
    aff = AffineResidue(n, shift, mult)
    samples = set(f.xs) | {Fraction(i) for i in range(-1, n)} | {Fraction(1, n)}
    for x in samples:
        if not is_nadic(f.eval(x), n) or phi_frac(f.eval(x), n) != aff.apply(phi_frac(x, n)):
            raise NotResiduePreserving(f"residue of {x} is not carried affinely")
    return aff


# -- break values --------------------------------------------------------

def break_jump(f: PLMap, x) -> Fraction:
    """Right slope over left slope at ``x`` (1 where ``f`` is affine)."""
    return f.slope_at(x, "right") / f.slope_at(x, "left")


def leftmost_break(f: PLMap):
    return f.xs[0] if f.points else None


def rightmost_break(f: PLMap):
    return f.xs[-1] if f.points else None


# -- constructors from point data -----------------------------------------

def power_pieces(a: Fraction, b: Fraction, n: int) -> list:
    """Cut ``[a, b]`` into intervals whose lengths are powers of ``n``.

    The count is the base-``n`` digit sum of the length, which is congruent
    to its residue mod ``n - 1``.
    """
    length = b - a
    s = 0
    while (length * n**s).denominator != 1:
        s += 1
    N = (length * n**s).numerator
    sizes = []
    k = 0
    while N:
        N, d = divmod(N, n)
        sizes.extend([Fraction(n**k, n**s)] * d)
        k += 1
    sizes.reverse()
    cuts = [a]
    for sz in sizes:
        cuts.append(cuts[-1] + sz)
    return list(zip(cuts, cuts[1:]))


def _split_first(pieces: list, n: int) -> list:
    a, b = pieces[0]
    w = (b - a) / n
    return [(a + w * k, a + w * (k + 1)) for k in range(n)] + pieces[1:]


def _segment_points(n: int, x0, x1, y0, y1) -> list:
    """Points of an element of B_n carrying ``[x0, x1]`` onto ``[y0, y1]``."""
    px = power_pieces(x0, x1, n)
    py = power_pieces(y0, y1, n)
    if (len(px) - len(py)) % (n - 1):
        raise ResidueMismatch("interval lengths have different residues")
    while len(px) < len(py):
        px = _split_first(px, n)
    while len(py) < len(px):
        py = _split_first(py, n)
    return [(u[0], v[0]) for u, v in zip(px, py)] + [(px[-1][1], py[-1][1])]


def interpolate_points(n: int, xs: Sequence, ys: Sequence) -> PLMap:
    """An element of B_n carrying each ``xs[i]`` to ``ys[i]``."""
    xs = [_frac(x) for x in xs]
    ys = [_frac(y) for y in ys]
    if len(xs) != len(ys) or not xs:
        raise ValueError("need equally many (and at least one) source and target points")
    for seq in (xs, ys):
        if any(b <= a for a, b in zip(seq, seq[1:])):
            raise NotAscending("points must be strictly ascending")
    for x, y in zip(xs, ys):
        if not (is_nadic(x, n) and is_nadic(y, n)):
            raise ResidueMismatch(f"{x} or {y} is not in Z[1/{n}]")
        if phi_frac(x, n) != phi_frac(y, n):
            raise ResidueMismatch(f"{x} and {y} have different residues")
    if len(xs) == 1:
        return translation(n, ys[0] - xs[0])
    pts = [(xs[0], ys[0])]
    for i in range(len(xs) - 1):
        pts.extend(_segment_points(n, xs[i], xs[i + 1], ys[i], ys[i + 1])[1:])
    return PLMap.from_points(n, pts, ONE, ONE)


def glue(pieces: Sequence, n: int | None = None) -> PLMap:
    """Extend maps given on disjoint intervals to one map of A_n.

    ``pieces`` is a list of ``((a, b), f)``; ``a`` may be None for -inf and
    ``b`` None for +inf.  Gaps are filled with B_n-type segments and the
    outer tails (where not given) are translations.
    """
    if not pieces:
        raise ValueError("glue needs at least one piece")
    pieces = sorted(pieces, key=lambda p: (-math.inf if p[0][0] is None else p[0][0]))
    n = n or pieces[0][1].n
    ends = []  # (x, y) boundary data for residue checks
    for (a, b), f in pieces:
        for x in (a, b):
            if x is not None:
                ends.append((_frac(x), f.eval(x)))
    residues = {(phi_frac(y, n) - phi_frac(x, n)) % (n - 1) for x, y in ends} if n > 2 else {0}
    if len(residues) > 1:
        raise IncompatibleResidues("pieces move residues by different amounts")
    pts = []
    ls = rs = ONE
    prev = None
    for idx, ((a, b), f) in enumerate(pieces):
        if a is None:
            if idx:
                raise NotAscending("only the first piece may extend to -inf")
            ls = f.ls
        else:
            a = _frac(a)
            if prev is not None:
                pb, py = prev
                if a < pb:
                    raise NotAscending("pieces overlap")
                if a > pb:
                    pts.extend(_segment_points(n, pb, a, py, f.eval(a))[1:-1])
                elif py != f.eval(a):
                    raise IncompatibleResidues("touching pieces disagree")
            pts.append((a, f.eval(a)))
        lo = -math.inf if a is None else a
        hi = math.inf if b is None else _frac(b)
        pts.extend(p for p in f.points if lo < p[0] < hi)
        if b is None:
            if idx != len(pieces) - 1:
                raise NotAscending("only the last piece may extend to +inf")
            rs = f.rs
            prev = None
        else:
            b = _frac(b)
            pts.append((b, f.eval(b)))
            prev = (b, f.eval(b))
    if not pts:
        return pieces[0][1]
    dedup = []
    for p in pts:
        if not dedup or dedup[-1][0] != p[0]:
            dedup.append(p)
    return PLMap.from_points(n, dedup, ls, rs)


# -- periodic maps -------------------------------------------------------

@dataclass(frozen=True)
class PeriodicPLMap:
    """Homeomorphism commuting with translation by ``period`` and fixing 0.

    ``points`` are the breaks in ``[0, period]``; ``(0, 0)`` and
    ``(period, period)`` are always present.
    """

    n: int
    period: int
    points: tuple

    @classmethod
    def from_points(cls, n: int, period: int, pts: Iterable) -> PeriodicPLMap:
        pts = sorted((_frac(x), _frac(y)) for x, y in pts)
        p = Fraction(period)
        if pts[0] != (0, 0) or pts[-1] != (p, p):
            raise ValueError("fundamental domain must fix 0 and the period")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not (x1 > x0 and y1 > y0):
                raise NotAscending("breakpoints must be strictly ascending")
        sl = [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(pts, pts[1:])]
        kept = [pts[0]]
        for i in range(1, len(pts) - 1):
            if sl[i - 1] != sl[i]:
                kept.append(pts[i])
        kept.append(pts[-1])
        return cls(n, period, tuple(kept))

    @cached_property
    def xs(self) -> list:
        return [x for x, _ in self.points]

    @cached_property
    def ys(self) -> list:
        return [y for _, y in self.points]

    def is_identity(self) -> bool:
        return len(self.points) == 2

    def eval(self, x) -> Fraction:
        x = _frac(x)
        k = math.floor(x / self.period)
        r = x - k * self.period
        i = min(bisect_right(self.xs, r), len(self.xs) - 1)
        x0, y0 = self.points[i - 1]
        x1, y1 = self.points[i]
        return y0 + (y1 - y0) * (r - x0) / (x1 - x0) + k * self.period

    def preimage(self, y) -> Fraction:
        y = _frac(y)
        k = math.floor(y / self.period)
        r = y - k * self.period
        i = min(bisect_right(self.ys, r), len(self.ys) - 1)
        x0, y0 = self.points[i - 1]
        x1, y1 = self.points[i]
        return x0 + (x1 - x0) * (r - y0) / (y1 - y0) + k * self.period

    def breaks_in(self, a, b) -> list:
        """All breakpoints with ``a <= x <= b`` (including period copies)."""
        a, b = _frac(a), _frac(b)
        p = self.period
        out = []
        k0 = math.floor(a / p) - 1
        k1 = math.floor(b / p) + 1
        for k in range(k0, k1 + 1):
            for x, y in self.points[:-1]:
                X = x + k * p
                if a <= X <= b:
                    out.append((X, y + k * p))
        return sorted(set(out))

    def slopes(self) -> list:
        return [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(self.points, self.points[1:])]

    def to_json(self) -> dict:
        return {"n": self.n, "period": self.period,
                "points": [{"x": _qjson(x), "y": _qjson(y)} for x, y in self.points]}


def with_period(P: PeriodicPLMap, period: int) -> PeriodicPLMap:
    """Same map viewed with a multiple of its period."""
    if period % P.period:
        raise PeriodMismatch(f"{period} is not a multiple of {P.period}")
    return PeriodicPLMap.from_points(P.n, period, P.breaks_in(0, period))


def _common(P: PeriodicPLMap, Q: PeriodicPLMap):
    if P.n != Q.n:
        raise BaseMismatch(f"bases {P.n} and {Q.n} differ")
    if P.period != Q.period:
        L = P.period * Q.period // math.gcd(P.period, Q.period)
        P, Q = with_period(P, L), with_period(Q, L)
    return P, Q


def p_eval(P: PeriodicPLMap, x) -> Fraction:
    return P.eval(x)


def p_compose(*maps: PeriodicPLMap) -> PeriodicPLMap:
    out = maps[0]
    for Q in maps[1:]:
        P, Q = _common(out, Q)
        cand = set(P.xs) | {P.preimage(y) for y in Q.xs}
        out = PeriodicPLMap.from_points(P.n, P.period, [(x, Q.eval(P.eval(x))) for x in sorted(cand)])
    return out


def p_inverse(P: PeriodicPLMap) -> PeriodicPLMap:
    return PeriodicPLMap(P.n, P.period, tuple((y, x) for x, y in P.points))


def p_identity(n: int, period: int | None = None) -> PeriodicPLMap:
    p = period or n - 1
    return PeriodicPLMap(n, p, ((ZERO, ZERO), (Fraction(p), Fraction(p))))


def phi_extend(W: PLMap, period: int | None = None) -> PeriodicPLMap:
    """Periodic extension of a map supported in ``[0, period]``."""
    p = period or W.n - 1
    if not support_in(W, 0, p):
        raise SupportTooWide(f"support is not inside [0, {p}]")
    pts = [(ZERO, ZERO)] + [q for q in W.points if 0 < q[0] < p] + [(Fraction(p), Fraction(p))]
    return PeriodicPLMap.from_points(W.n, p, pts)


def to_window(P: PeriodicPLMap, a, b) -> PLMap:
    """PL map agreeing with ``P`` on ``[a, b]``, affine outside it."""
    a, b = _frac(a), _frac(b)
    pts = [(a, P.eval(a))] + [q for q in P.breaks_in(a, b) if a < q[0] < b] + [(b, P.eval(b))]
    ls = (pts[1][1] - pts[0][1]) / (pts[1][0] - pts[0][0])
    rs = (pts[-1][1] - pts[-2][1]) / (pts[-1][0] - pts[-2][0])
    return PLMap.from_points(P.n, pts, ls, rs)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def pl_coset_normalizer(n: int, p: int) -> PeriodicPLMap:
    """Periodic normalizer of B_n with slopes in the coset ``p<n>``.

    On ``[0, n-1]`` it has slope ``p`` up to ``(n/p - 1, n - p)`` and slope
    ``p/n`` afterwards.
    """
    if not (_is_prime(p) and n % p == 0 and p < n):
        raise BadDivisor(f"{p} is not a proper prime divisor of {n}")
    pts = [(0, 0), (Fraction(n, p) - 1, n - p), (n - 1, n - 1)]
    return PeriodicPLMap.from_points(n, n - 1, pts)
