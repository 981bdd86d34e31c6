import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import inner_witness_map, rand_word
from genthompson.errors import BadBases, DivisibilityFail, PeriodMismatch, Unverified
from genthompson.morphisms import (
    ALPHA4,
    ALPHA4_INV,
    GenAuto,
    apply,
    auto_from_periodic,
    check_inverse,
    compose_autos,
    conj_by_periodic_word,
    embed_in_f2,
    identity_auto,
    inner_auto,
    inner_check,
    is_identity_auto,
    is_unbent_at,
    lambda_lift,
    lambda_map,
    lambda_prime_map,
    perm_closure,
    perm_then,
    pi_of_auto,
    residue_rotation,
    rotate,
    same_action,
    tau,
    theta_lift,
    torsion_example,
    torsion_ledger,
    verified,
    verify,
    zeta,
)
from genthompson.plmap import compose, p_identity, phi_extend, to_window
from genthompson.words import Word, equal, from_plmap, parse, to_plmap

ALPHA = verified(GenAuto.from_strings(4, ALPHA4))
ALPHA_INV = verified(GenAuto.from_strings(4, ALPHA4_INV))


# -- index maps and substitutions -------------------------------------------------

def test_zeta_examples():
    assert zeta(3, 5, 4) == 8
    assert zeta(3, 5, 3) == 5
    assert [zeta(2, 4, j) for j in range(-1, 3)] == [-3, 0, 3, 6]
    assert [zeta(3, 4, j) for j in range(4)] == [0, 1, 3, 4]
    with pytest.raises(BadBases):
        zeta(4, 4, 0)


def test_tau_examples():
    assert tau(3, 5, parse("g0 g3^-1 tn", 3)) == parse("g0 g5^-1 tn", 5)
    assert tau(2, 3, parse("t1", 2)) == parse("tn", 3)


def test_lambda_examples():
    assert lambda_map(5, 3, parse("g0 g1^-1", 5)) == parse("g0^2 g1^-2", 3)
    assert lambda_prime_map(3, 5, parse("g1 g2", 3)) == parse("g2 g4", 5)
    assert embed_in_f2(parse("t1 g0", 3)) == parse("g0 g1^2", 2)
    with pytest.raises(DivisibilityFail):
        lambda_map(4, 3, parse("g0", 4))


def test_lambda_maps_are_homomorphisms_on_maps():
    rng = random.Random(4)
    for m, n in ((2, 3), (3, 5), (2, 5), (4, 7)):
        for _ in range(10):
            u = rand_word(rng, n, 6, tletters=())
            v = rand_word(rng, n, 6, tletters=())
            if equal(u, v):
                assert equal(lambda_map(n, m, u), lambda_map(n, m, v))
            w = rand_word(rng, m, 6, tletters=())
            x = rand_word(rng, m, 6, tletters=())
            lhs = lambda_prime_map(m, n, w * x)
            assert equal(lhs, lambda_prime_map(m, n, w) * lambda_prime_map(m, n, x))


# -- verification -----------------------------------------------------------------

def test_alpha_verifies_and_inverse():
    assert verify(GenAuto.from_strings(4, ALPHA4))
    assert verify(GenAuto.from_strings(4, ALPHA4_INV))
    assert check_inverse(ALPHA, ALPHA_INV)
    assert not check_inverse(ALPHA, ALPHA)


def test_swapped_images_fail_verify():
    ims = list(ALPHA4)
    ims[0], ims[2] = ims[2], ims[0]
    assert not verify(GenAuto.from_strings(4, ims))


def test_identity_and_shift_autos_verify():
    for n in (2, 3, 5):
        assert verify(GenAuto(n, n - 1, tuple(Word.g(n, i) for i in range(n - 1))))
        # g_i -> g_{i+1} is conjugation by t_1
        assert verify(GenAuto(n, 1, (Word.g(n, 1),)))


def test_period_must_divide():
    with pytest.raises(PeriodMismatch):
        GenAuto.from_strings(4, ["g0", "g1"])


def test_apply_requires_verified():
    a = GenAuto.from_strings(4, ALPHA4)
    with pytest.raises(Unverified):
        apply(a, parse("g0", 4))
    assert equal(apply(a, parse("g0", 4), trusted=True), parse(ALPHA4[0], 4))


def test_json_round_trip():
    a = GenAuto.from_json(ALPHA.to_json())
    assert a == ALPHA


# -- lifts -------------------------------------------------------------------------

def test_theta_lift_of_identity_is_identity():
    for m, n in ((2, 3), (3, 5), (4, 6)):
        assert is_identity_auto(theta_lift(identity_auto(m), n))


def test_theta_lift_is_functorial():
    for n in (5, 6):
        lhs = theta_lift(compose_autos(ALPHA, ALPHA_INV), n)
        rhs = compose_autos(theta_lift(ALPHA, n), theta_lift(ALPHA_INV, n))
        assert same_action(lhs, rhs)
        assert is_identity_auto(rhs)
        assert verify(theta_lift(ALPHA, n))


def test_theta_lift_intertwines_tau():
    rng = random.Random(5)
    for n in (5, 7):
        b = theta_lift(ALPHA, n)
        for _ in range(8):
            w = rand_word(rng, 4, 5, lo=0, hi=5, tletters=())
            assert equal(apply(b, tau(4, n, w)), tau(4, n, apply(ALPHA, w)))


def test_lambda_lift_equivariance():
    rng = random.Random(6)
    b = lambda_lift(ALPHA, 7)
    assert b.period == 3 and verify(b)
    for _ in range(8):
        w = rand_word(rng, 4, 5, lo=0, hi=5, tletters=())
        assert equal(apply(b, tau(4, 7, w)), tau(4, 7, apply(ALPHA, w)))
    with pytest.raises(DivisibilityFail):
        lambda_lift(ALPHA, 6)


# -- rotations and permutations ----------------------------------------------------------

def test_rotate_trivial_steps():
    for a in (ALPHA, theta_lift(ALPHA, 6)):
        n = a.n
        assert same_action(rotate(a, 0), a)
        assert same_action(rotate(a, n - 1), a)


def test_rotation_permutation_law():
    for n in (4, 5, 6, 7):
        ex = torsion_example(n)
        want = (0, n - 2) + tuple(range(1, n - 2))
        assert pi_of_auto(ex.gamma) == want
        trans = (0, 2, 1) + tuple(range(3, n - 1))
        assert pi_of_auto(ex.beta) == trans
        got = perm_then(perm_then(residue_rotation(n, 1), trans), residue_rotation(n, n - 3))
        assert got == want


def test_pi_of_auto_is_a_homomorphism():
    for n in (4, 5, 6):
        ex = torsion_example(n)
        for a, b in ((ex.beta, ex.gamma), (ex.gamma, ex.gamma), (ex.gamma, ex.beta)):
            assert pi_of_auto(compose_autos(a, b)) == perm_then(pi_of_auto(a), pi_of_auto(b))


def test_perm_closure_sizes():
    assert len(perm_closure([(1, 2, 0)])) == 3
    assert len(perm_closure([(1, 0, 2, 3), (1, 2, 3, 0)])) == 24


# -- inner automorphisms ------------------------------------------------------------------

def test_periodic_identity_gives_identity_auto():
    for n in (2, 3, 5):
        assert is_identity_auto(auto_from_periodic(p_identity(n)))


def test_empty_witness_conjugation():
    for n in (3, 4):
        for j in range(n - 1):
            assert conj_by_periodic_word(j, Word(n)) == Word.g(n, j)


def test_inner_check_statuses():
    ex = torsion_example(4)
    assert inner_check(ex.gamma, Word(4))["status"] == "fail"
    assert inner_check(identity_auto(4), Word(4)) == {"status": "inner", "indices": [0, 1, 2]}


def test_inner_auto_matches_periodic_conjugation():
    rng = random.Random(8)
    for n in (2, 3, 4, 5):
        for _ in range(3):
            Wm = inner_witness_map(rng, n)
            W = from_plmap(Wm, "Finf")
            a = auto_from_periodic(phi_extend(Wm))
            assert same_action(a, inner_auto(W))
            assert inner_check(a, W)["status"] == "inner"


def test_unbent_examples():
    assert all(is_unbent_at(identity_auto(4), i) for i in range(3))
    ex = torsion_example(5)
    assert is_unbent_at(ex.beta, 3)


# -- torsion example ---------------------------------------------------------------------

@pytest.mark.parametrize("n", [4, 5, 6])
def test_torsion_ledger_all_pass(n):
    rows = torsion_ledger(n)
    assert [t for t, _, _ in rows] == list("abcdefghi")
    assert all(ok for _, ok, _ in rows), [r for r in rows if not r[1]]


def test_gamma_four_is_alpha_inverse():
    ex = torsion_example(4)
    assert same_action(ex.gamma, ALPHA_INV)


# -- properties -------------------------------------------------------------------------

seeds = st.integers(min_value=0, max_value=2**32)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=5, max_value=7), seeds)
def test_apply_is_a_homomorphism(n, seed):
    rng = random.Random(seed)
    b = theta_lift(ALPHA, n)
    u = rand_word(rng, n, 5, lo=-2, hi=2 * n, tletters=())
    v = rand_word(rng, n, 5, lo=-2, hi=2 * n, tletters=())
    assert equal(apply(b, u * v), apply(b, u) * apply(b, v))
    assert equal(apply(b, u.inverse()), apply(b, u).inverse())


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=2, max_value=5), seeds)
def test_inner_auto_composition(n, seed):
    rng = random.Random(seed)
    W1, W2 = inner_witness_map(rng, n), inner_witness_map(rng, n)
    a = auto_from_periodic(phi_extend(W1))
    b = auto_from_periodic(phi_extend(W2))
    c = auto_from_periodic(phi_extend(compose(W1, W2)))
    assert same_action(compose_autos(a, b), c)
    assert to_window(phi_extend(W1), -1, n).is_identity() == is_identity_auto(a)
