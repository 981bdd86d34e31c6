"""Homomorphisms between Thompson groups and automorphisms given by generator images.

An automorphism of ``(F_{n,oo}, t_{n-1})`` is stored as the images of
``g_0 .. g_{p-1}`` where ``p`` divides ``n-1``; the image of ``g_{i+kp}`` is
the image of ``g_i`` with every subscript raised by ``kp``.  Composition is
left to right: ``compose_autos(a, b)`` applies ``a`` first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .errors import (
    BadBases,
    BaseMismatch,
    DegenerateActiveInterval,
    DivisibilityFail,
    FlavorMismatch,
    NonIntegerImage,
    NotMember,
    NotNormalizer,
    NotResiduePreserving,
    PeriodMismatch,
    SlopeCosetMixed,
    SupportTooWide,
    Unverified,
)
from .nadic import phi_frac
from .plmap import (
    PLMap,
    PeriodicPLMap,
    compose,
    generator,
    inverse,
    is_nadic,
    leftmost_break,
    membership,
    pi_map,
    support_in,
    to_window,
)
from .words import Word, equal, from_plmap, leftmost_break_word, parse, shift, to_plmap

# -- index maps and letter substitutions ------------------------------------


def _check_bases(m: int, n: int):
    if not 2 <= m < n:
        raise BadBases(f"need 2 <= m < n, got m={m}, n={n}")


def zeta(m: int, n: int, j: int) -> int:
    """Write ``j = i + k(m-1)`` with ``0 <= i <= m-2`` and return ``i + k(n-1)``."""
    _check_bases(m, n)
    k, i = divmod(j, m - 1)
    return i + k * (n - 1)


def tau(m: int, n: int, w: Word) -> Word:
    """Image of a word of ``F_{m,oo}`` under ``g_j -> g_{zeta(j)}``, ``t_{m-1} -> t_{n-1}``."""
    _check_bases(m, n)
    if w.n != m:
        raise BaseMismatch(f"word has base {w.n}, expected {m}")
    out = []
    for kind, idx, exp in w.letters:
        if kind == "g":
            out.append(("g", zeta(m, n, idx), exp))
        elif kind == "tn" or m == 2:
            out.append(("tn", 0, exp))
        else:
            raise FlavorMismatch("t1 is not in F_{m,oo}")
    return Word(n, tuple(out))


def _divides(m: int, n: int) -> int:
    if (n - 1) % (m - 1):
        raise DivisibilityFail(f"{m - 1} does not divide {n - 1}")
    return (n - 1) // (m - 1)


def lambda_map(n: int, m: int, w: Word) -> Word:
    """``F_{n,0} -> F_{m,0}`` with ``g_{n,i} -> g_{m,i}^d``, ``d = (n-1)/(m-1)``."""
    _check_bases(m, n)
    d = _divides(m, n)
    if w.n != n or w.has_t():
        raise FlavorMismatch("expected a word in the g_i of base n")
    return Word(m, tuple(("g", i, e * d) for _, i, e in w.letters))


def lambda_prime_map(m: int, n: int, w: Word) -> Word:
    """``F_{m,0} -> F_{n,0}`` with ``g_{m,i} -> g_{n,d*i}``."""
    _check_bases(m, n)
    d = _divides(m, n)
    if w.n != m or w.has_t():
        raise FlavorMismatch("expected a word in the g_i of base m")
    return Word(n, tuple(("g", d * i, e) for _, i, e in w.letters))


def embed_in_f2(w: Word) -> Word:
    """``F_n -> F_{2,0}``: ``t1 -> g_0`` and ``g_i -> g_{i+1}^{n-1}``."""
    n = w.n
    out = []
    for kind, idx, exp in w.letters:
        if kind == "g":
            out.append(("g", idx + 1, exp * (n - 1)))
        elif kind == "t1":
            out.append(("g", 0, exp))
        else:
            out.append(("g", 0, exp * (n - 1)))
    return Word(2, tuple(out))


def lambda_maps(kind: str, m: int, n: int, w: Word) -> Word:
    if kind in ("lambda", "λ"):
        return lambda_map(n, m, w)
    if kind in ("lambda_prime", "λ'"):
        return lambda_prime_map(m, n, w)
    raise ValueError(f"unknown kind {kind!r}")


# -- automorphisms given by images ---------------------------------------------


@dataclass(frozen=True)
class GenAuto:
    n: int
    period: int
    images: tuple
    verified: bool = False

    def __post_init__(self):
        if self.period < 1 or (self.n - 1) % self.period:
            raise PeriodMismatch(f"period {self.period} does not divide {self.n - 1}")
        if len(self.images) != self.period:
            raise PeriodMismatch(f"need {self.period} images, got {len(self.images)}")
        for w in self.images:
            if w.n != self.n:
                raise BaseMismatch(f"image has base {w.n}, expected {self.n}")

    @classmethod
    def from_strings(cls, n: int, images: Sequence[str], period: int | None = None) -> GenAuto:
        ws = tuple(parse(s, n) for s in images)
        return cls(n, period or len(ws), ws)

    def image(self, i: int) -> Word:
        k, r = divmod(i, self.period)
        return shift(self.images[r], k, self.period)

    def to_json(self) -> dict:
        return {"n": self.n, "period": self.period,
                "images": [str(w) if w.letters else "" for w in self.images],
                "verified": self.verified}

    @classmethod
    def from_json(cls, obj: dict) -> GenAuto:
        n = int(obj["n"])
        ws = tuple(parse(s, n) for s in obj["images"])
        return cls(n, int(obj.get("period", len(ws))), ws, bool(obj.get("verified", False)))


def identity_auto(n: int, period: int | None = None) -> GenAuto:
    p = period or n - 1
    return GenAuto(n, p, tuple(Word.g(n, i) for i in range(p)), True)


def with_period(a: GenAuto, period: int) -> GenAuto:
    if period % a.period or (a.n - 1) % period:
        raise PeriodMismatch(f"cannot view period {a.period} as {period}")
    return GenAuto(a.n, period, tuple(a.image(i) for i in range(period)), a.verified)


def simplify(w: Word) -> Word:
    """Canonical word for the same element (via the reduced subdivision pair)."""
    return from_plmap(to_plmap(w), "Finf")


def apply(a: GenAuto, w: Word, trusted: bool = False, reduce: bool = True) -> Word:
    """Image of ``w``; ``trusted=True`` skips the requirement that ``a`` is verified."""
    if not (a.verified or trusted):
        raise Unverified("automorphism has not been verified")
    if w.n != a.n:
        raise BaseMismatch(f"word has base {w.n}, expected {a.n}")
    letters = []
    for kind, idx, exp in w.letters:
        if kind == "g":
            img = a.image(idx) ** exp
            letters.extend(img.letters)
        elif kind == "tn" or a.n == 2:
            letters.append(("tn", 0, exp))
        else:
            raise FlavorMismatch("t1 is not in F_{n,oo}")
    out = Word(a.n, tuple(letters))
    return simplify(out) if reduce else out


def _active_bounds(f: PLMap, n: int):
    """``(L, R)`` with ``f`` identity left of ``L`` and ``t_{n-1}`` right of ``R``."""
    if f.left_shift() != 0 or f.right_shift() != n - 1 or not f.points:
        return None
    return f.xs[0], f.xs[-1]


def verify(a: GenAuto) -> bool:
    """Check the defining relations of F_{n,oo} on the images.

    Each image must be the identity near -oo and ``t_{n-1}`` near +oo.
    The relation for ``i < j`` holds automatically once the image of
    ``g_j`` is the identity left of the point beyond which the image of
    ``g_i`` is translation by ``n-1``, so only finitely many pairs remain.
    """
    n, p = a.n, a.period
    maps = [to_plmap(w) for w in a.images]
    bounds = []
    for f in maps:
        b = _active_bounds(f, n)
        if b is None:
            return False
        bounds.append(b)
    cache: dict = {}

    def img(j: int) -> PLMap:
        if j not in cache:
            k, r = divmod(j, p)
            off = k * p
            f = maps[r]
            cache[j] = PLMap.from_points(n, [(x + off, y + off) for x, y in f.points], f.ls, f.rs)
        return cache[j]

    for i in range(p):
        Ri = bounds[i][1]
        vi = img(i)
        vi_inv = inverse(vi)
        j = i + 1
        while True:
            k, r = divmod(j, p)
            if bounds[r][0] + k * p >= Ri:
                break
            if compose(vi_inv, img(j), vi) != img(j + n - 1):
                return False
            j += 1
    return True


def verified(a: GenAuto) -> GenAuto:
    """Return ``a`` with its flag set, after checking the relations."""
    return replace(a, verified=verify(a))


def compose_autos(a: GenAuto, b: GenAuto) -> GenAuto:
    """``a`` then ``b``."""
    if a.n != b.n:
        raise BaseMismatch(f"bases {a.n} and {b.n} differ")
    L = a.period * b.period // math.gcd(a.period, b.period)
    ims = tuple(apply(b, a.image(i), trusted=True) for i in range(L))
    return GenAuto(a.n, L, ims, a.verified and b.verified)


def auto_power(a: GenAuto, k: int) -> GenAuto:
    if k < 0:
        raise ValueError("only non-negative powers are supported")
    out = identity_auto(a.n, a.period)
    out = replace(out, verified=a.verified)
    for _ in range(k):
        out = compose_autos(out, a)
    return out


def same_action(a: GenAuto, b: GenAuto) -> bool:
    if a.n != b.n:
        return False
    L = a.period * b.period // math.gcd(a.period, b.period)
    return all(equal(a.image(i), b.image(i)) for i in range(L))


def is_identity_auto(a: GenAuto) -> bool:
    return all(equal(a.image(i), Word.g(a.n, i)) for i in range(a.period))


def check_inverse(a: GenAuto, b: GenAuto) -> bool:
    return is_identity_auto(compose_autos(a, b)) and is_identity_auto(compose_autos(b, a))


# -- lifts -------------------------------------------------------------------------


def _require_verified(a: GenAuto):
    if not a.verified:
        raise Unverified("automorphism has not been verified")


def theta_lift(a: GenAuto, n: int) -> GenAuto:
    """Lift from base ``m`` to base ``n``: low generators through ``tau``, the rest fixed."""
    _require_verified(a)
    m = a.n
    _check_bases(m, n)
    if a.period != m - 1:
        a = with_period(a, m - 1)
    ims = [tau(m, n, a.images[i]) for i in range(m - 1)]
    ims += [Word.g(n, i) for i in range(m - 1, n - 1)]
    return GenAuto(n, n - 1, tuple(ims), True)


def lambda_lift(a: GenAuto, n: int) -> GenAuto:
    """Symmetric lift: period ``m-1`` images through ``tau``."""
    _require_verified(a)
    m = a.n
    _check_bases(m, n)
    _divides(m, n)
    if a.period != m - 1:
        a = with_period(a, m - 1)
    return GenAuto(n, m - 1, tuple(tau(m, n, w) for w in a.images), True)


# -- rotation and permutations -----------------------------------------------------


def fixed_point_image(a: GenAuto, i: int) -> Fraction:
    """Where the realizing homeomorphism sends the integer ``i``."""
    n = a.n
    k, r = divmod(i, n - 1)
    if r == 0:
        return Fraction(k * (n - 1))
    lb = leftmost_break(to_plmap(a.image(r)))
    return lb + k * (n - 1)


def rotate(a: GenAuto, j: int) -> GenAuto:
    """The ``j``-step rotation: ``g_i -> shift(a(g_{i+j}), -r)`` with ``r`` the image of ``j``."""
    _require_verified(a)
    n = a.n
    if a.period != n - 1:
        a = with_period(a, n - 1)
    r = fixed_point_image(a, j)
    if r.denominator != 1:
        raise NonIntegerImage(f"{j} is sent to the non-integer {r}")
    r = int(r)
    ims = tuple(simplify(shift(a.image(i + j), -r, 1)) for i in range(n - 1))
    return GenAuto(n, n - 1, ims, True)


def pi_of_auto(a: GenAuto) -> tuple:
    """Permutation ``i -> phi(leftmost break of a(g_i))`` of ``{0, .., n-2}``."""
    _require_verified(a)
    n = a.n
    out = []
    for i in range(n - 1):
        if i == 0:
            out.append(0)
            continue
        out.append(phi_frac(fixed_point_image(a, i), n))
    return tuple(out)


def perm_then(p: Sequence[int], q: Sequence[int]) -> tuple:
    """Left-to-right product: first ``p`` then ``q``."""
    return tuple(q[x] for x in p)


def perm_inverse(p: Sequence[int]) -> tuple:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def residue_rotation(n: int, s: int) -> tuple:
    return tuple((i + s) % (n - 1) for i in range(n - 1))


def perm_closure(gens: Sequence[Sequence[int]]) -> set:
    """Group generated by the given permutations (breadth-first closure)."""
    gens = [tuple(g) for g in gens]
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = perm_then(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


# -- automorphisms from homeomorphisms ----------------------------------------------


def _conjugate_generator(h: PeriodicPLMap, i: int) -> PLMap:
    n = h.n
    p = n - 1
    H = to_window(h, i - p - 1, i + 2 * p + 2)
    C = compose(inverse(H), generator(n, i), H)
    a, b = h.eval(i), h.eval(i + 1)
    pts = [(a, a)] + [q for q in C.points if a < q[0] < b] + [(b, b + p)]
    return PLMap.from_points(n, pts)


def auto_from_periodic(h: PeriodicPLMap) -> GenAuto:
    """Conjugation by a periodic PL normalizer ``h`` fixing 0."""
    n = h.n
    if h.period != n - 1:
        raise NotNormalizer(f"period must be {n - 1}")
    if not all(is_nadic(x, n) and is_nadic(y, n) for x, y in h.points):
        raise NotNormalizer("a break lies outside Z[1/n]")
    try:
        pi_map(h)
    except (SlopeCosetMixed, NotResiduePreserving) as exc:
        raise NotNormalizer(str(exc)) from exc
    ims = []
    for i in range(n - 1):
        try:
            ims.append(from_plmap(_conjugate_generator(h, i), "Finf"))
        except NotMember as exc:
            raise NotNormalizer(str(exc)) from exc
    return verified(GenAuto(n, n - 1, tuple(ims)))


def conj_by_periodic_word(j: int, W: Word) -> Word:
    """``w^-1 g_j w`` for ``w`` the periodic extension of ``W``, as ``W^-1 g_j W W_1``."""
    n = W.n
    if not support_in(to_plmap(W), 0, n - 1):
        raise SupportTooWide("witness must be supported in [0, n-1]")
    return W.inverse() * Word.g(n, j) * W * shift(W, 1, n - 1)


def inner_auto(W: Word) -> GenAuto:
    """Conjugation by the periodic extension of ``W``."""
    n = W.n
    ims = tuple(simplify(conj_by_periodic_word(i, W)) for i in range(n - 1))
    return GenAuto(n, n - 1, ims, True)


def inner_check(a: GenAuto, witness) -> dict:
    """Compare ``a(g_i)`` with conjugation of ``g_i`` by the witness (one per slot or shared)."""
    n = a.n
    ws = [witness] * (n - 1) if isinstance(witness, Word) else list(witness)
    if len(ws) != n - 1:
        raise ValueError(f"need {n - 1} witnesses")
    hits = []
    for i in range(n - 1):
        try:
            ok = equal(a.image(i), conj_by_periodic_word(i, ws[i]))
        except SupportTooWide:
            ok = False
        if ok:
            hits.append(i)
    if len(hits) == n - 1:
        diagonal = all(equal(ws[0], w) for w in ws[1:])
        return {"status": "inner" if diagonal else "inner_at", "indices": hits}
    if hits:
        return {"status": "inner_at", "indices": hits}
    return {"status": "fail", "indices": []}


def is_unbent_at(a: GenAuto, i: int) -> bool:
    """Whether ``a(g_i)`` has no break strictly inside the image of ``[i, i+1]``."""
    lo, hi = fixed_point_image(a, i), fixed_point_image(a, i + 1)
    f = to_plmap(a.image(i))
    if f.is_identity() or hi <= lo:
        raise DegenerateActiveInterval("image interval is degenerate")
    return not any(lo < x < hi for x in f.xs)


# -- the torsion example --------------------------------------------------------------

ALPHA4 = ("g0 g4 g2^-1", "g2 g3 g5^-1", "g2 g4 g2^-1")
ALPHA4_INV = ("g0 g1 g3^-1", "g0 g2 g0^-1", "g1 g5 g3^-1")


@dataclass(frozen=True)
class TorsionExample:
    n: int
    alpha: GenAuto
    alpha_inv: GenAuto
    beta: GenAuto
    gamma: GenAuto
    P: Word


def torsion_example(n: int) -> TorsionExample:
    if n < 4:
        raise BadBases("the example needs n >= 4")
    alpha = verified(GenAuto.from_strings(4, ALPHA4))
    alpha_inv = verified(GenAuto.from_strings(4, ALPHA4_INV))
    beta = alpha if n == 4 else theta_lift(alpha, n)
    gamma = rotate(beta, 1)
    P = Word(n, (("g", n - 2, 1), ("g", 0, -1)))
    return TorsionExample(n, alpha, alpha_inv, beta, gamma, P)


def displayed_beta(n: int) -> tuple:
    """Images of the lifted example written out by hand."""
    ims = [f"g0 g{n} g2^-1", f"g2 g{n - 1} g{n + 1}^-1", f"g2 g{n} g2^-1"]
    ims += [f"g{i}" for i in range(3, n - 1)]
    return tuple(parse(s, n) for s in ims)


def displayed_gamma(n: int) -> tuple:
    """Images of the rotated example written out by hand."""
    ims = [f"g0 g{n - 3} g{n - 1}^-1", f"g0 g{n - 2} g0^-1"]
    ims += [f"g{i - 1}" for i in range(2, n - 2)]
    ims.append(f"g{n - 3} g{2 * n - 3} g{n - 1}^-1")
    return tuple(parse(s, n) for s in ims)


def u_word(n: int, k: int) -> Word:
    return Word(n, (("g", 0, 1), ("g", n - k, 1), ("g", n - 1, -1)))


def v_word(n: int, k: int) -> Word:
    return Word(n, (("g", n - 2, 1), ("g", n - k, 1), ("g", n - 1, -1)))


def torsion_ledger(n: int) -> list:
    """Run every check on the torsion example; rows are ``(tag, ok, text)``."""
    ex = torsion_example(n)
    gamma, beta = ex.gamma, ex.beta
    rows = []

    def add(tag, ok, text):
        rows.append((tag, bool(ok), text))

    add("a", check_inverse(ex.alpha, ex.alpha_inv), "alpha * alpha^-1 = id on generators (n=4)")
    add("b", verify(GenAuto.from_strings(4, ALPHA4)), "alpha passes verify")
    want_b = displayed_beta(n)
    add("c", all(equal(beta.image(i), w) for i, w in enumerate(want_b)),
        f"beta_{n} matches the displayed images")
    a, _ = leftmost_break_word(beta.image(1))
    add("d", a == 2, f"leftmost break of beta_{n}(g1) = {a}")
    want_g = displayed_gamma(n)
    add("e", all(equal(gamma.image(i), w) for i, w in enumerate(want_g)),
        f"gamma_{n} matches the displayed images")
    ladder = all(
        equal(apply(gamma, u_word(n, k)), u_word(n, k + 1))
        and equal(apply(gamma, v_word(n, k)), v_word(n, k + 1))
        for k in range(3, n - 1)
    )
    add("f", ladder, "u/v ladders advance under gamma")
    pw = gamma
    ok_g = True
    for j in range(1, n - 3):
        ok_g &= equal(apply(pw, Word.g(n, n - 3)), Word.g(n, n - 3 - j))
        pw = compose_autos(pw, gamma)
    add("g", ok_g, f"gamma^j(g{n - 3}) = g({n - 3}-j) for 1 <= j <= {n - 4}")
    add("h", equal(apply(gamma, ex.P), ex.P), "gamma fixes P")
    res = inner_check(auto_power(gamma, n - 2), ex.P)
    add("i", res["status"] == "inner",
        f"gamma^{n - 2} inner via P; order in Out = {n - 2}")
    return rows
