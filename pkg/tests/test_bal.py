"""psi, c0 and the balance involution; paj identities."""
import random

import pytest
from hypothesis import given, settings, strategies as st

from moulds import bal as B
from moulds.braid import BraidAlgebra, commutator_psi_c, dec_inv, grt_representative, madec
from moulds.mould import (P4_ALPHABETS, Mould, minus, paj, random_polymould, symmetry_check)
from moulds.ncseries import NCSeries, ma, random_dagger, random_group_like_dagger
from moulds.ratfun import POL, RAT, RatFun, form_sum
from moulds.words import Alphabet, Letter

T = Alphabet.trivial()
seeds = st.integers(0, 10 ** 9)


def W(*labels, n=None):
    return B.labeled_word(list(labels), n)


def test_psi_boundary_cases():
    assert B.psi(W(B.Y, B.Y, B.Y)) == {(W(B.Y, B.Y, B.Y), ()): 1}
    w = W(B.XY, B.XY, B.XY)
    assert B.psi(w) == {((), w): 1}
    assert B.psi(W(B.XY)) == {((), W(B.XY)): 1}


def test_psi_input_validation():
    with pytest.raises(ValueError):
        B.psi(W(B.X))
    u = (1, 0)
    with pytest.raises(ValueError):
        B.psi((Letter(u, B.XY), Letter(u, B.Y)))


def test_c0_examples():
    w = W(B.XY, B.X)
    assert B.c0(w) == {w: RatFun.one(2)}
    assert B.c0((), 2) == {(): RatFun.one(2)}
    # one application of the recursion: the 0-letter is folded into its left neighbour
    x1, x12 = (1, 0), (1, 1)
    inv2 = RatFun.inv_forms([(0, 1)], 2)
    assert B.c0(W(B.X, B.ZERO_LABEL)) == {(Letter(x1, B.X),): inv2, (Letter(x12, B.X),): -inv2}


def test_tilde_and_bar_psi():
    assert B.tilde_psi(W(B.XY)) == {((), W(B.XY)): RatFun.one(1)}
    w = W(B.Y, B.Y)
    assert B.tilde_psi(w) == {(w, ()): RatFun.one(2)}
    w = W(B.XY, B.Y, B.XY)
    assert B.bar_psi((), w) == B.tilde_psi(w)
    eta = W(B.X, B.X)
    assert B.bar_psi(eta, (), 2) == {((), eta): RatFun.one(2)}


def test_rho():
    assert B.rho(W(B.XY)) == (Letter((1,), 1),)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_psi_red_weight(d):
    rng = random.Random(d)
    for _ in range(4):
        labels = [rng.choice([B.XY, B.Y]) for _ in range(d)]
        w = B.random_lindep_word(labels, d + 1, rng)
        a = form_sum([l.u for l in w if l.sigma == B.XY], d + 1)
        for (_, right), c in B.psi_red(w).items():
            assert form_sum([l.u for l in right], d + 1) == a


def test_psi_red_all_y():
    w = W(B.Y, B.Y)
    assert B.psi_red(w) == {(w, ()): 1}


def test_depth_one_table():
    rng = random.Random(0)
    for _ in range(20):
        P = random_polymould(P4_ALPHABETS, 1, rng, denominators=1)
        Q = B.bal(P)
        assert Q((), ()) == P((), ())
        assert Q((), (2,)) == P((), (2,))
        assert Q((1,), ()) == P((), (1,))
        assert Q((), (1,)) == P((1,), ())


@settings(max_examples=5)
@given(seeds)
def test_bal_involution(s):
    P = random_polymould(P4_ALPHABETS, 3, random.Random(s), denominators=1)
    assert B.bal(B.bal(P)) == P


def test_bal_requires_p4():
    P = random_polymould((T, T), 1, random.Random(1))
    with pytest.raises(ValueError):
        B.bal(P)


@pytest.mark.parametrize("seed", range(3))
def test_denominators_cancel(seed):
    P = random_polymould(P4_ALPHABETS, 3, random.Random(seed), family=RAT)
    assert P.is_polynomial()
    assert B.bal(P).is_polynomial()


@pytest.mark.parametrize("seed", range(2))
def test_rev_bal_is_flip_rev(seed):
    rng = random.Random(seed)
    alg = BraidAlgebra(4, 3)
    w = dec_inv([random_dagger(Alphabet.block(1), 3, rng),
                 random_dagger(Alphabet.block(2), 3, rng)], alg)
    P = madec(w)
    assert B.p4_rev(B.bal(P)) == B.p4_flip(B.p4_rev(P))


def test_minus_paj_well_balanced():
    m = minus(paj(3))
    assert B.is_well_balanced(m)
    assert B.is_gari_as_bal(m)
    assert not B.is_even_length_one(m)
    assert not B.is_gari_as_bal_underline(m)


def test_balancing_constant_of_pentagon_solution():
    phi = NCSeries.one(T, 4) + grt_representative(3, 4)
    r = B.solve_balancing_constant(ma(phi))
    assert r.ok
    assert r.C == ma(commutator_psi_c(phi))
    assert r.checks == {"C_symmetral": True, "C_length_one_zero": True}
    assert symmetry_check("symmetral", r.C).ok
    assert B.beta_C(r.C, 1, 0) == RatFun.zero(1)


def test_balancing_negative_control():
    M = ma(random_group_like_dagger(T, 4, random.Random(3), min_degree=2))
    r = B.solve_balancing_constant(M)
    assert not r.ok and r.witness


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_paj_reduction_all_patterns(d):
    for p in B.all_label_patterns([B.XY, B.X, B.ZERO_LABEL], d):
        lhs, rhs = B.paj_reduction_sides(B.labeled_word(p))
        assert lhs == rhs, p


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_paj_psi_red_all_patterns(d):
    for p in B.all_label_patterns([B.XY, B.Y], d):
        lhs, rhs = B.paj_psi_red_sides(B.labeled_word(p))
        assert lhs == rhs, p


@settings(max_examples=20)
@given(seeds, st.integers(1, 3))
def test_paj_identities_random_forms(s, d):
    rng = random.Random(s)
    p = [rng.choice([B.XY, B.X, B.ZERO_LABEL]) for _ in range(d)]
    assert B.paj_reduction_check(B.random_lindep_word(p, d + 1, rng))
    p = [rng.choice([B.XY, B.Y]) for _ in range(d)]
    assert B.paj_psi_red_check(B.random_lindep_word(p, d + 1, rng))
