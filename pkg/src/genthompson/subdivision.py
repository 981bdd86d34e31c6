"""Allowable subdivisions of the half line and subdivision-pair normal forms.

An allowable subdivision supported in ``[0, oo)`` is stored as its finite
set of non-integer cut points.  Every allowable interval is a node
``[a/n^l, (a+1)/n^l]`` of the n-ary tree hanging off a unit interval.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotEventuallyStandard, NotPositive, NotSeminormal, UnsupportedLeftOfZero
from .plmap import PLMap, is_power_of, membership

Node = tuple  # (numerator a, level l) for the interval [a/n^l, (a+1)/n^l]


def _exact_level(q: Fraction, n: int) -> int:
    e = 0
    while (q * n**e).denominator != 1:
        e += 1
    return e


@dataclass(frozen=True)
class Subdivision:
    """Standard subdivision of R refined by ``cuts`` (all non-integers)."""

    n: int
    cuts: frozenset = frozenset()

    def intervals(self, upto: int) -> list:
        """Intervals of the subdivision inside ``[0, upto]``."""
        pts = self.endpoints(upto)
        return list(zip(pts, pts[1:]))

    def endpoints(self, upto: int) -> list:
        pts = set(Fraction(i) for i in range(0, upto + 1))
        pts.update(c for c in self.cuts if 0 < c < upto)
        return sorted(pts)

    def hull(self) -> int:
        """Smallest integer at or beyond every cut."""
        return max((math.ceil(c) for c in self.cuts), default=0)

    def splits(self) -> int:
        return len(self.cuts) // (self.n - 1)

    def split_nodes(self) -> set:
        """Tree nodes ``(a, l)`` that are subdivided."""
        n = self.n
        out = set()
        for c in self.cuts:
            e = _exact_level(c, n)
            out.add((math.floor(c * n ** (e - 1)), e - 1))
        return out

    def is_allowable(self) -> bool:
        """Cut set is closed: each split node's parent is split too."""
        n = self.n
        nodes = self.split_nodes()
        for a, l in nodes:
            kids = {Fraction(a, n**l) + Fraction(k, n ** (l + 1)) for k in range(1, n)}
            if not kids <= self.cuts:
                return False
            if l > 0 and (a // n, l - 1) not in nodes:
                return False
        return True

    def supported_in(self, k, l) -> bool:
        return all(k < c < l for c in self.cuts)

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in sorted(self.cuts)) + "]"

    def to_json(self) -> dict:
        return {"n": self.n, "cuts": [{"num": c.numerator, "den": c.denominator} for c in sorted(self.cuts)]}


def standard(n: int) -> Subdivision:
    return Subdivision(n, frozenset())


@dataclass(frozen=True)
class SubdivisionPair:
    """Leaves of ``domain`` map affinely, in order, onto leaves of ``range``.

    Far to the right the map is translation by ``shift``, which is
    ``(n-1)`` times the difference of the split counts.
    """

    domain: Subdivision
    range: Subdivision

    @property
    def n(self) -> int:
        return self.domain.n

    @property
    def shift(self) -> int:
        return (self.n - 1) * (self.domain.splits() - self.range.splits())

    def to_json(self) -> dict:
        return {"domain": self.domain.to_json(), "range": self.range.to_json(), "shift": self.shift}


def _indices(P) -> list:
    """Expanded generator subscripts of a positive word or index list."""
    if hasattr(P, "letters"):
        out = []
        for kind, idx, exp in P.letters:
            if kind != "g" or exp < 0:
                raise NotPositive("word must be a positive word in the g_i")
            out.extend([idx] * exp)
        return out
    return list(P)


def word_to_subdivision(P, n: int | None = None) -> Subdivision:
    """Subdivision obtained by splitting interval number ``i`` for each letter ``g_i``."""
    if n is None:
        n = P.n
    idx = _indices(P)
    if any(i < 0 for i in idx):
        raise NotPositive("subscripts must be non-negative")
    upto = (max(idx) + 2) if idx else 1
    pts = [Fraction(i) for i in range(upto + 1)]
    cuts = set()
    for i in idx:
        while i + 1 >= len(pts):
            pts.append(pts[-1] + 1)
        a, b = pts[i], pts[i + 1]
        w = (b - a) / n
        new = [a + w * k for k in range(1, n)]
        cuts.update(new)
        pts[i + 1:i + 1] = new
    return Subdivision(n, frozenset(cuts))


def subdivision_indices(D: Subdivision) -> list:
    """Ascending subscripts of the semi-normal positive word for ``D``.

    Walks the split nodes in preorder; each one is interval number (count
    of final leaves to its left) at the moment it is split.
    """
    n = D.n
    if any(c < 0 for c in D.cuts):
        raise UnsupportedLeftOfZero("subdivision has cuts left of 0")
    nodes = D.split_nodes()
    top = D.hull()
    pts = D.endpoints(max(top, 1))
    out = []

    def visit(a: int, l: int):
        if (a, l) not in nodes:
            return
        left = Fraction(a, n**l)
        out.append(bisect_left(pts, left))
        for k in range(n):
            visit(a * n + k, l + 1)

    for i in range(top):
        visit(i, 0)
    return out


def subdivision_to_word(D: Subdivision):
    from .words import Word

    return Word.from_indices(D.n, subdivision_indices(D))


def _allowable_image(y0: Fraction, y1: Fraction, n: int) -> bool:
    w = y1 - y0
    return w <= 1 and is_power_of(w, n) and (y0 / w).denominator == 1


def plmap_to_pair(f: PLMap) -> SubdivisionPair:
    """Reduced subdivision pair of an element of F_{n,0}.

    A unit interval (or tree node) is split exactly when ``f`` is not
    affine on it or does not carry it onto an allowable interval, so the
    result is the coarsest pair and needs no further reduction.
    """
    n = f.n
    if not membership(f, "F0"):
        raise NotEventuallyStandard("map is not in F_{n,0}")
    if f.is_identity():
        return SubdivisionPair(standard(n), standard(n))
    top = max(math.ceil(f.xs[-1]), 1)
    dcuts, rcuts = set(), set()
    stack = [(Fraction(i), Fraction(i + 1)) for i in range(top)]
    xs = f.xs
    while stack:
        a, b = stack.pop()
        lo = bisect_right(xs, a)
        inner = lo < len(xs) and xs[lo] < b
        ya, yb = f.eval(a), f.eval(b)
        if not inner and _allowable_image(ya, yb, n):
            continue
        w = (b - a) / n
        kids = [a + w * k for k in range(n + 1)]
        dcuts.update(kids[1:-1])
        stack.extend(zip(kids, kids[1:]))
    # images of the domain leaves give the range cuts
    D = Subdivision(n, frozenset(dcuts))
    for x in D.endpoints(top):
        y = f.eval(x)
        if y.denominator != 1:
            rcuts.add(y)
    return SubdivisionPair(D, Subdivision(n, frozenset(rcuts)))


def pair_to_plmap(pair: SubdivisionPair) -> PLMap:
    D, R = pair.domain, pair.range
    n = D.n
    s = pair.shift
    top = max(D.hull(), R.hull() - s, -s, 1)
    dpts = D.endpoints(top)
    rpts = R.endpoints(top + s)
    if len(dpts) != len(rpts):
        raise NotEventuallyStandard("leaf counts do not match")
    return PLMap.from_points(n, list(zip(dpts, rpts)))


def support_bound_check(P, k: int, l: int, n: int | None = None) -> bool:
    """Whether the subdivision of a semi-normal positive word lies in ``[k, l]``."""
    if n is None:
        n = P.n
    idx = _indices(P)
    if any(b < a for a, b in zip(idx, idx[1:])):
        raise NotSeminormal("subscripts must be non-decreasing")
    if not idx:
        return True
    if idx[0] < k:
        return False
    return all(i < l + (n - 1) * j for j, i in enumerate(idx))


def pair_split_nodes(pair: SubdivisionPair) -> set:
    return pair.domain.split_nodes() | pair.range.split_nodes()


def from_cuts(n: int, cuts: Iterable) -> Subdivision:
    return Subdivision(n, frozenset(Fraction(c) for c in cuts))


def leaves_from_nodes(n: int, nodes: Sequence[Node]) -> Subdivision:
    """Subdivision that splits exactly the given tree nodes (parents included)."""
    cuts = set()
    for a, l in nodes:
        base = Fraction(a, n**l)
        cuts.update(base + Fraction(k, n ** (l + 1)) for k in range(1, n))
    return Subdivision(n, frozenset(cuts))
