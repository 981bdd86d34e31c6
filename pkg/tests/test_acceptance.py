"""Acceptance suite: one test and one PASS/FAIL line per criterion.

All checks are exact (rational arithmetic); runtimes are pinned where the
criterion names a budget.
"""

import math
import random
import time
from fractions import Fraction

from gen import (
    inner_witness_map,
    rand_A,
    rand_B,
    rand_nadic,
    rand_word,
    same_residue_targets,
    supported_word,
)
from genthompson import morphisms as M
from genthompson.errors import BadDivisor, ResidueMismatch
from genthompson.nadic import NAdic, mu_orbit, phi_frac
from genthompson.outerpl import OutPLElem, mk, torsion_order, UnitCoset
from genthompson.plmap import (
    PLMap,
    break_jump,
    compose,
    generator,
    glue,
    identity,
    interpolate_points,
    inverse,
    membership,
    phi_extend,
    pi_map,
    pl_coset_normalizer,
    p_compose,
    p_identity,
    rho,
    support_in,
    to_window,
    translation,
)
from genthompson.subdivision import pair_to_plmap, plmap_to_pair
from genthompson.words import Word, avoids, equal, from_plmap, parse, to_plmap

# runtime budgets in seconds
BUDGET_RELATIONS = 1.0
BUDGET_ROUND_TRIPS = 30.0
BUDGET_TORSION_N7 = 60.0


def test_criterion_01_relations(record):
    t0 = time.perf_counter()
    bad = []
    for n in (2, 3, 4, 5):
        g = {i: generator(n, i) for i in range(0, 8 + n)}
        t1, tn = translation(n, 1), translation(n, n - 1)
        for i in range(9):
            for j in range(i + 1, 9):
                if compose(inverse(g[i]), g[j], g[i]) != g[j + n - 1]:
                    bad.append(("g", n, i, j))
            if compose(inverse(t1), g[i], t1) != g[i + 1]:
                bad.append(("t1", n, i))
            if compose(inverse(tn), g[i], tn) != g[i + n - 1]:
                bad.append(("tn", n, i))
    dt = time.perf_counter() - t0
    ok = not bad and dt < BUDGET_RELATIONS
    record(1, ok, f"relations for n=2..5, i<j<=8 exact; {len(bad)} failures; {dt:.2f}s < {BUDGET_RELATIONS}s")
    assert ok, bad[:5]


def test_criterion_02_nonuniqueness(record):
    a = parse("g0^2 g2 g0^-2", 2)
    b = parse("g0 g1 g0^-1", 2)
    fa, fb = to_plmap(a), to_plmap(b)
    pa, pb = plmap_to_pair(fa), plmap_to_pair(fb)
    ok = fa == fb and pa == pb and from_plmap(fa) == from_plmap(fb)
    record(2, ok, f"g0^2 g2 g0^-2 == g0 g1 g0^-1 as maps and as reduced pairs ({pa.domain} / {pa.range})")
    assert ok


def test_criterion_03_round_trips(record):
    rng = random.Random(3)
    t0 = time.perf_counter()
    bad = 0
    for k in range(500):
        n = 2 + k % 4
        tl = ("t1", "tn") if k % 5 == 0 else ("tn",)
        w = rand_word(rng, n, 12, -6, 6, tletters=tl)
        f = to_plmap(w)
        flavor = "F" if "t1" in tl else "Finf"
        back = from_plmap(f, flavor)
        if to_plmap(back) != f:
            bad += 1
        _, _, core = _peel(f)
        pair = plmap_to_pair(core)
        if pair_to_plmap(pair) != core or plmap_to_pair(pair_to_plmap(pair)) != pair:
            bad += 1
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < BUDGET_ROUND_TRIPS
    record(3, ok, f"500 random words: word/map/pair round trips exact; {bad} failures; {dt:.1f}s < {BUDGET_ROUND_TRIPS}s")
    assert ok


def _peel(f):
    from genthompson.words import _peel as peel
    return peel(f, "Finf")


def test_criterion_04_mu_orbits(record):
    rng = random.Random(4)
    bad = 0
    for n in range(2, 7):
        for _ in range(200):
            e = rng.randint(0, 5)
            q = Fraction(rng.randrange((n - 1) * n**e), n**e)
            orbit = mu_orbit(NAdic.from_fraction(q, n))
            last = orbit[-1].to_fraction()
            # independent oracle: q = a / n^e and n = 1 mod (n-1), so the residue is a mod (n-1)
            want = (q * n**e).numerator % (n - 1)
            if last != want or last != phi_frac(q, n):
                bad += 1
    ok = bad == 0
    record(4, ok, f"1000 mu_n orbits (n=2..6) end at phi_n(x); {bad} failures")
    assert ok


def test_criterion_05_homomorphisms(record):
    rng = random.Random(5)
    bad = []
    for k in range(200):
        n = 3 + k % 4
        f, g = rand_A(rng, n), rand_A(rng, n)
        if rho(compose(f, g)) != rho(f) + rho(g):
            bad.append("rho")
        # pi on residue-preserving maps with slopes in several cosets
        h1 = _random_normalizer(rng, n)
        h2 = _random_normalizer(rng, n)
        if pi_map(p_compose(h1, h2)) != pi_map(h1).then(pi_map(h2)):
            bad.append("pi periodic")
        if pi_map(compose(f, g)) != pi_map(f).then(pi_map(g)):
            bad.append("pi")
        x, y = rand_nadic(rng, n), rand_nadic(rng, n)
        p = n - 1
        if phi_frac(x + y, n) != (phi_frac(x, n) + phi_frac(y, n)) % p:
            bad.append("phi +")
        if phi_frac(x * y, n) != (phi_frac(x, n) * phi_frac(y, n)) % p:
            bad.append("phi *")
        if phi_frac(-x, n) != (-phi_frac(x, n)) % p:
            bad.append("phi -")
        # break-jump chain rule, multiplicative form of the additive rule
        for z in set(f.xs) | {f.preimage(v) for v in g.xs} | {x}:
            if break_jump(compose(f, g), z) != break_jump(f, z) * break_jump(g, f.eval(z)):
                bad.append("chain")
            if break_jump(inverse(f), f.eval(z)) != 1 / break_jump(f, z):
                bad.append("inverse")
    ok = not bad
    record(5, ok, f"rho additive, pi affine-homomorphic, phi ring laws, break chain rule on 200 pairs; {len(bad)} failures")
    assert ok, bad[:5]


def _random_normalizer(rng, n):
    """Composite of a coset normalizer (when one exists) and periodic B_n pieces."""
    parts = []
    for p in mk(n).primes:
        if rng.random() < 0.5:
            try:
                parts.append(pl_coset_normalizer(n, p))
            except BadDivisor:
                pass
    if rng.random() < 0.7:
        parts.append(phi_extend(inner_witness_map(rng, n)))
    parts.append(p_identity(n))
    rng.shuffle(parts)
    return p_compose(*parts)


def test_criterion_06_constructors(record):
    rng = random.Random(6)
    bad = []
    for k in range(200):
        n = 2 + k % 5
        f, xs, ys = rand_B(rng, n, npts=rng.randint(1, 4))
        if not membership(f, "B") or any(f.eval(x) != y for x, y in zip(xs, ys)):
            bad.append(("interp", n, xs, ys))
    rejected = 0
    for k in range(50):
        n = 3 + k % 4
        xs = sorted({rand_nadic(rng, n, -5, 5, 2) for _ in range(3)})
        ys = same_residue_targets(rng, n, xs)
        gaps = [b - a for a, b in zip(ys, ys[1:])] or [Fraction(1)]
        e = 0
        while Fraction(1, n**e) >= min(gaps):
            e += 1
        i = rng.randrange(len(ys))
        ys[i] += Fraction(1, n**e)  # residue shifts by 1, order kept
        try:
            interpolate_points(n, xs, ys)
        except ResidueMismatch:
            rejected += 1
    for k in range(100):
        n = 2 + k % 5
        shift = rng.randint(-3, 3)
        pieces = _glue_pieces(rng, n, shift)
        f = glue(pieces, n)
        ok = membership(f, "A") and (n == 2 or rho(f).value == shift % (n - 1))
        for (a, b), g in pieces:
            lo = a if a is not None else (b - 5)
            hi = b if b is not None else (a + 5)
            probes = [lo, hi, (lo + hi) / 2] + [x for x in g.xs if lo <= x <= hi]
            ok &= all(f.eval(x) == g.eval(x) for x in probes)
        if not ok:
            bad.append(("glue", n, pieces))
    ok = not bad and rejected == 50
    record(6, ok, f"interpolate_points 200 ok, {rejected}/50 incompatible rejected; glue 100 piece sets; {len(bad)} failures")
    assert ok, bad[:3]


def _glue_pieces(rng, n, shift):
    """Two or three B_n pieces (translated by ``shift``) on separated intervals."""
    while True:
        cuts = sorted({rng.randint(-8, 8) for _ in range(6)})
        if len(cuts) < 4:
            continue
        cnt = min(len(cuts) // 2, rng.randint(2, 3))
        spans = [(cuts[2 * i], cuts[2 * i + 1]) for i in range(cnt)]
        pieces = []
        for a, b in spans:
            g, _, _ = rand_B(rng, n, npts=2, span=8)
            pieces.append(((Fraction(a), Fraction(b)), compose(g, translation(n, shift))))
        if rng.random() < 0.3:
            (a, b), g = pieces[0]
            pieces[0] = ((None, b), g)
        if rng.random() < 0.3:
            (a, b), g = pieces[-1]
            pieces[-1] = ((a, None), g)
        ends = []
        for (a, b), g in pieces:
            ends += [g.eval(a) if a is not None else None, g.eval(b) if b is not None else None]
        vals = [v for v in ends if v is not None]
        if all(u < v for u, v in zip(vals, vals[1:])):
            return pieces


def test_criterion_07_torsion_ledger(record):
    lines = []
    ok = True
    for n in (4, 5, 6, 7):
        t0 = time.perf_counter()
        rows = M.torsion_ledger(n)
        dt = time.perf_counter() - t0
        ok &= all(r[1] for r in rows) and [r[0] for r in rows] == list("abcdefghi")
        if n == 7:
            ok &= dt < BUDGET_TORSION_N7
        lines.append(f"n={n}: {sum(r[1] for r in rows)}/9 ({dt:.2f}s)")
    record(7, ok, "torsion ledger (a)-(i) for n=4..7; " + ", ".join(lines))
    assert ok


def test_criterion_08_pi_surjectivity(record):
    alpha = M.auto_from_periodic(pl_coset_normalizer(4, 2))
    ok = M.pi_of_auto(alpha) == (0, 2, 1)
    ok &= M.same_action(alpha, M.verified(M.GenAuto.from_strings(4, M.ALPHA4)))
    orders = {}
    for n in (4, 5, 6, 7):
        lift = alpha if n == 4 else M.theta_lift(alpha, n)
        transposition = (0, 2, 1) + tuple(range(3, n - 1))
        ok &= M.pi_of_auto(lift) == transposition
        rot = M.pi_of_auto(M.rotate(lift, 1))
        cycle = (0, n - 2) + tuple(range(1, n - 2))
        ok &= rot == cycle
        # the displayed formula: rho_1 . pi . rho_{n-3}, composed left to right
        formula = M.perm_then(M.perm_then(M.residue_rotation(n, 1), transposition), M.residue_rotation(n, n - 3))
        ok &= formula == cycle
        group = M.perm_closure([transposition, rot])
        orders[n] = len(group)
        ok &= len(group) == math.factorial(n - 2) and all(p[0] == 0 for p in group)
    ok &= orders[4] == 2 and orders[5] == 6
    record(8, ok, f"pi(alpha)=(1 2), lifts keep (1 2), rotation is the displayed cycle; subgroup orders {orders}")
    assert ok


def test_criterion_09_outpl_torsion(record):
    bad = []
    for n in (4, 8, 9, 16, 27):
        ctx = mk(n)
        for d in (d for d in range(1, ctx.k + 1) if ctx.k % d == 0):
            x = OutPLElem.make(n, 1, ctx.m**d)
            want = (ctx.k // d) * (ctx.m**d - 1)
            if torsion_order(x) != want:
                bad.append((n, d, torsion_order(x), want))
    for n in (6, 10, 12):
        for p in mk(n).primes:
            if torsion_order(OutPLElem(n, 0, UnitCoset.of(n, p))) != math.inf:
                bad.append((n, p))
    ok = not bad
    record(9, ok, f"torsion orders (k/d)(m^d-1) for n in 4,8,9,16,27; infinite for 6,10,12; {len(bad)} failures")
    assert ok, bad


def test_criterion_10_coset_normalizers(record):
    bad = []
    for n, p in ((4, 2), (6, 2), (6, 3), (8, 2), (9, 3), (10, 2), (10, 5)):
        h = pl_coset_normalizer(n, p)
        aff = pi_map(h)
        if aff.mult != p % (n - 1) or aff.shift != 0:
            bad.append((n, p, aff))
        if aff.permutation() != tuple(r * p % (n - 1) for r in range(n - 1)):
            bad.append((n, p, "perm"))
    ok = not bad
    record(10, ok, f"pi of the coset normalizers is multiplication by p for 7 (n, p) pairs; {len(bad)} failures")
    assert ok, bad


def test_criterion_11_avoidance(record):
    rng = random.Random(11)
    bad = []
    # product closure
    for k in range(100):
        n = 3 + k % 4
        j = rng.randrange(n - 1)
        u = _avoiding_word(rng, n, j)
        v = _avoiding_word(rng, n, j)
        if not (avoids(u, j) and avoids(v, j) and avoids(u * v, j) and avoids(u.inverse(), j)):
            bad.append(("a", n, j, str(u), str(v)))
    # tau images avoid the classes m-1 .. n-2
    for k in range(100):
        m = 2 + k % 4
        n = rng.randint(m + 1, 7)
        w = rand_word(rng, m, 8)
        img = M.tau(m, n, w)
        if not all(avoids(img, j) for j in range(m - 1, n - 1)):
            bad.append(("c", m, n, str(w)))
    # conjugation by t_b shifts the avoided class
    agree = hits = 0
    for k in range(100):
        n = 3 + k % 4
        p = n - 1
        b = rng.randint(1, p - 1)
        j = rng.randrange(p)
        skip = j if rng.random() < 0.6 else None
        W1 = supported_word(rng, n, 0, b, 4, skip)
        W2 = supported_word(rng, n, b, p, 4, skip)
        W = compose(to_plmap(W1), to_plmap(W2))
        Wc = _conjugate_periodic_by_translation(W, b)
        lhs = avoids(from_plmap(W), j)
        rhs = avoids(from_plmap(Wc), (j - b) % p)
        hits += lhs
        agree += lhs == rhs
        if lhs != rhs:
            bad.append(("5.4.3", n, b, j))
    ok = not bad and hits > 0
    record(11, ok, f"avoidance: product closure, tau images, t_b-conjugation ({hits} avoiding / {agree} agreeing of 100); {len(bad)} failures")
    assert ok, bad[:3]


def _avoiding_word(rng, n, j):
    letters = []
    for _ in range(rng.randint(0, 8)):
        i = rng.choice([i for i in range(-6, 7) if (i - j) % (n - 1)])
        letters.append(("g", i, rng.choice((1, -1))))
    if rng.random() < 0.2:
        letters.append(("tn", 0, rng.choice((1, -1))))
    return Word(n, tuple(letters))


def _conjugate_periodic_by_translation(W: PLMap, b: int) -> PLMap:
    """Fundamental piece on [0, n-1] of ``t_b w t_b^-1`` for ``w`` the periodic extension of ``W``."""
    n = W.n
    p = n - 1
    h = to_window(phi_extend(W), -2 * p, 3 * p)
    c = compose(translation(n, b), h, translation(n, -b))
    return glue([((None, Fraction(0)), identity(n)), ((Fraction(0), Fraction(p)), c),
                 ((Fraction(p), None), identity(n))], n)


def test_criterion_12_lift_coherence(record):
    rng = random.Random(12)
    bad = []
    for _ in range(100):
        m = rng.randint(2, 5)
        n = rng.randint(m + 1, 7)
        Wmap = inner_witness_map(rng, m)
        W = from_plmap(Wmap)
        a = M.auto_from_periodic(phi_extend(Wmap))
        b = M.theta_lift(a, n)
        f = rand_word(rng, m, 5)
        if not equal(M.apply(b, M.tau(m, n, f)), M.tau(m, n, M.apply(a, f))):
            bad.append(("intertwine", m, n, str(W), str(f)))
        Wl = M.tau(m, n, W)
        if not support_in(to_plmap(Wl), 0, m - 1):
            bad.append(("support", m, n, str(W)))
        v = M.inner_auto(Wl)
        if not all(equal(b.image(i), v.image(i)) for i in range(m - 1)):
            bad.append(("witness", m, n, str(W)))
        res = M.inner_check(b, [Wl] * (m - 1) + [Word(n)] * (n - m))
        if res["status"] == "fail" or not set(range(m - 1)) <= set(res["indices"]):
            bad.append(("inner_at", m, n, str(W), res))
    ok = not bad
    record(12, ok, f"lift intertwining and witness lifting on 100 (m, n, auto) triples; {len(bad)} failures")
    assert ok, bad[:3]
