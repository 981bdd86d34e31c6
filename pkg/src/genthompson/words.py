"""Words in the generators ``t1``, ``tn`` (translation by n-1) and ``g_i``.

Letters are ``(kind, index, exponent)`` with ``kind`` one of ``"g"``,
``"t1"`` and ``"tn"``; the index is only meaningful for ``"g"``.
Products read left to right, matching the right action on the line.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .errors import BaseMismatch, HasTLetters, NotMember, ParseError, TrivialWord
from .nadic import Residue, phi_frac
from .plmap import (
    PLMap,
    compose,
    generator,
    identity,
    inverse,
    membership,
    power,
    translation,
)
from .subdivision import plmap_to_pair, subdivision_indices

T_KINDS = ("t1", "tn")


def _merge(letters: Iterable) -> tuple:
    out: list = []
    for kind, idx, exp in letters:
        if kind != "g":
            idx = 0
        if exp == 0:
            continue
        if out and out[-1][0] == kind and out[-1][1] == idx:
            e = out[-1][2] + exp
            out.pop()
            if e:
                out.append((kind, idx, e))
        else:
            out.append((kind, idx, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    n: int
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _merge(self.letters))

    @classmethod
    def from_indices(cls, n: int, idx: Iterable[int], exp: int = 1) -> Word:
        return cls(n, tuple(("g", i, exp) for i in idx))

    @classmethod
    def g(cls, n: int, i: int, exp: int = 1) -> Word:
        return cls(n, (("g", i, exp),))

    @classmethod
    def t(cls, n: int, kind: str = "tn", exp: int = 1) -> Word:
        return cls(n, ((kind, 0, exp),))

    def __mul__(self, other: Word) -> Word:
        if self.n != other.n:
            raise BaseMismatch(f"bases {self.n} and {other.n} differ")
        return Word(self.n, self.letters + other.letters)

    def inverse(self) -> Word:
        return Word(self.n, tuple((k, i, -e) for k, i, e in reversed(self.letters)))

    def __pow__(self, k: int) -> Word:
        base = self if k >= 0 else self.inverse()
        return Word(self.n, base.letters * abs(k))

    def __len__(self) -> int:
        return sum(abs(e) for _, _, e in self.letters)

    def is_empty(self) -> bool:
        return not self.letters

    def has_t(self) -> bool:
        return any(k != "g" for k, _, _ in self.letters)

    def expanded(self) -> list:
        """Letters with unit exponents, as ``(kind, index, +-1)``."""
        out = []
        for k, i, e in self.letters:
            s = 1 if e > 0 else -1
            out.extend([(k, i, s)] * abs(e))
        return out

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        for k, i, e in self.letters:
            tok = f"g{i}" if k == "g" else k
            parts.append(tok if e == 1 else f"{tok}^{e}")
        return " ".join(parts)

    def to_json(self) -> dict:
        return {"n": self.n, "word": str(self) if self.letters else ""}


_TOKEN = re.compile(r"(?:g(-?\d+)|(t1|tn))(?:\^(-?\d+))?")


def parse(text: str, n: int) -> Word:
    """Parse the whitespace-separated grammar ``g<int>|t1|tn`` with ``^<int>``."""
    letters = []
    stripped = text.strip()
    if stripped in ("", "1"):
        return Word(n)
    for m in re.finditer(r"\S+", text):
        tok = m.group(0)
        mm = _TOKEN.fullmatch(tok)
        if mm is None:
            raise ParseError(f"bad token {tok!r}", column=m.start() + 1)
        idx, tkind, exp = mm.groups()
        e = int(exp) if exp is not None else 1
        if tkind:
            letters.append((tkind, 0, e))
        else:
            letters.append(("g", int(idx), e))
    return Word(n, tuple(letters))


# -- maps ------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _letter_map(n: int, kind: str, idx: int, exp: int) -> PLMap:
    if kind == "g":
        base = generator(n, idx)
    elif kind == "t1":
        base = translation(n, 1)
    else:
        base = translation(n, n - 1)
    return power(base, exp)


def to_plmap(w: Word) -> PLMap:
    if not w.letters:
        return identity(w.n)
    return compose(*(_letter_map(w.n, k, i, e) for k, i, e in w.letters))


def equal(w1: Word, w2: Word) -> bool:
    if w1.n != w2.n:
        raise BaseMismatch(f"bases {w1.n} and {w2.n} differ")
    return to_plmap(w1) == to_plmap(w2)


def shift(w: Word, j: int, step: int = 1) -> Word:
    """Conjugate by ``t^j`` where ``t`` translates by ``step``: ``g_i -> g_{i + j*step}``."""
    return Word(w.n, tuple((k, i + j * step if k == "g" else i, e) for k, i, e in w.letters))


def exponent_sums(w: Word) -> list:
    """Exponent sums of the ``g`` letters grouped by subscript mod ``n-1``."""
    if w.has_t():
        raise HasTLetters("exponent sums need a word in the g_i only")
    p = max(w.n - 1, 1)
    out = [0] * p
    for _, i, e in w.letters:
        out[i % p] += e
    return out


# -- semi-normal form ------------------------------------------------------

@dataclass(frozen=True)
class SemiNormal:
    """``t^tP * P * N^-1 * t^-tN`` with ``P``, ``N`` positive ascending."""

    P: Word
    N: Word
    tP: int = 0
    tN: int = 0
    t_kind: str = "tn"

    def word(self) -> Word:
        n = self.P.n
        return Word.t(n, self.t_kind, self.tP) * self.P * self.N.inverse() * Word.t(n, self.t_kind, -self.tN)

    def __str__(self) -> str:
        return str(self.word())


def _sort_positive(idx: list, n: int) -> list:
    """Bubble ``g_j g_i -> g_i g_{j+n-1}`` (i < j) until non-decreasing."""
    idx = list(idx)
    changed = True
    while changed:
        changed = False
        for k in range(len(idx) - 1):
            j, i = idx[k], idx[k + 1]
            if i < j:
                idx[k], idx[k + 1] = i, j + n - 1
                changed = True
    return idx


def _separate(letters: list, n: int) -> tuple:
    """Rewrite a list of ``(index, +-1)`` into positives followed by negatives."""
    seq = list(letters)
    k = 0
    while k < len(seq) - 1:
        (a, ea), (b, eb) = seq[k], seq[k + 1]
        if ea < 0 < eb:
            if a == b:
                del seq[k:k + 2]
                k = max(k - 1, 0)
                continue
            if a < b:
                seq[k], seq[k + 1] = (b + n - 1, 1), (a, -1)
            else:
                seq[k], seq[k + 1] = (b, 1), (a + n - 1, -1)
            k = max(k - 1, 0)
            continue
        k += 1
    pos = [i for i, e in seq if e > 0]
    neg = [i for i, e in seq if e < 0]
    return pos, list(reversed(neg))


def seminormal(w: Word) -> SemiNormal:
    n = w.n
    use_t1 = any(k == "t1" for k, _, _ in w.letters)
    unit = 1 if use_t1 else n - 1
    # push t letters to the front: g_j t^e = t^e g_{j + e*r}
    total = 0
    gs = []
    for k, i, e in reversed(w.expanded()):
        if k == "g":
            gs.append((i + total, e))
        else:
            total += e * (1 if k == "t1" else n - 1)
    gs.reverse()
    s = total // unit
    pos, neg = _separate(gs, n)
    P, N = _sort_positive(pos, n), _sort_positive(neg, n)
    kind = "t1" if use_t1 else "tn"
    if s >= 0:
        return SemiNormal(Word.from_indices(n, P), Word.from_indices(n, N), s, 0, kind)
    d = -s * unit
    return SemiNormal(Word.from_indices(n, [i + d for i in P]),
                      Word.from_indices(n, [i + d for i in N]), 0, -s, kind)


# -- from maps ---------------------------------------------------------------

_FLAVORS = {"F": "F", "F_n": "F", "Finf": "Finf", "F_inf": "Finf", "F0": "F0", "Fminf": "Fminf"}


def _peel(f: PLMap, flavor: str) -> tuple:
    """Split ``f = t^a * f'`` with ``f'`` identity near -oo and ``f'' = T^k f' T^-k`` in F_{n,0}."""
    n = f.n
    a = f.left_shift()
    fp = compose(translation(n, -a), f) if a else f
    if fp.is_identity():
        return int(a), 0, fp
    k = math.floor(fp.xs[0] / (n - 1))
    off = k * (n - 1)
    fpp = compose(translation(n, off), fp, translation(n, -off)) if off else fp
    return int(a), k, fpp


def from_plmap(f: PLMap, flavor: str = "Finf") -> Word:
    """A word for ``f`` in the generators of the named group."""
    n = f.n
    fl = _FLAVORS.get(flavor)
    if fl is None:
        raise ValueError(f"unknown flavor {flavor!r}")
    if not membership(f, fl):
        raise NotMember(f"map is not in {flavor}")
    a, k, fpp = _peel(f, fl)
    pair = plmap_to_pair(fpp)
    P = subdivision_indices(pair.domain)
    N = subdivision_indices(pair.range)
    core = Word.from_indices(n, P) * Word.from_indices(n, N).inverse()
    core = shift(core, k, n - 1)
    if a == 0:
        return core
    if fl == "F":
        return Word.t(n, "t1", a) * core
    return Word.t(n, "tn", a // (n - 1)) * core


def reduced(w: Word, flavor: str = "Finf") -> Word:
    """Canonical word obtained through the reduced subdivision pair."""
    return from_plmap(to_plmap(w), flavor)


def leftmost_break_word(w: Word) -> tuple:
    """Leftmost break ``a`` of a word in the ``g_i`` and its residue, found symbolically.

    Removes the longest common prefix ``v`` of the two semi-normal parts;
    the break is the smaller leading subscript of what is left, pulled
    back through ``v``.
    """
    if w.has_t():
        raise HasTLetters("leftmost break needs a word in the g_i only")
    sn = seminormal(w)
    P = [i for _, i, e in sn.P.expanded()]
    N = [i for _, i, e in sn.N.expanded()]
    c = 0
    while c < min(len(P), len(N)) and P[c] == N[c]:
        c += 1
    rest = [s[c] for s in (P, N) if len(s) > c]
    if not rest:
        raise TrivialWord("word is trivial")
    ik = min(rest)
    v = Word.from_indices(w.n, P[:c])
    a = to_plmap(v).preimage(ik) if c else Fraction(ik)
    return a, Residue(w.n, phi_frac(a, w.n))


def avoids(w: Word, j: int) -> bool:
    """Whether ``w`` can be written without any ``g_i``, ``i = j mod (n-1)``.

    Decided on the reduced subdivision pair of the conjugate lying in
    F_{n,0}; conjugating by powers of ``t_{n-1}`` keeps residues.
    """
    n = w.n
    f = to_plmap(w)
    if not membership(f, "Finf"):
        raise NotMember("avoidance is defined for F_{n,oo}")
    _, _, fpp = _peel(f, "Finf")
    pair = plmap_to_pair(fpp)
    p = n - 1
    nodes = pair.domain.split_nodes() | pair.range.split_nodes()
    return all((a - j) % p for a, _ in nodes)
