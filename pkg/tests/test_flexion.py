"""arit, ari, preari, expari, garit, gari, invgari."""
import random

import pytest
from hypothesis import given, settings, strategies as st

from moulds.flexion import ari, arit, expari, gari, garit, invgari, preari
from moulds.mould import Mould, mould_mul, random_mould, symmetry_check
from moulds.ncseries import ma, random_lie_dagger
from moulds.ratfun import RatFun
from moulds.words import Alphabet

T = Alphabet.trivial()
seeds = st.integers(0, 10 ** 9)
gammas = st.sampled_from([1, 2])


def ari_moulds(s, k, n=1, L=3):
    rng = random.Random(s)
    g = Alphabet.cyclic(n)
    return [random_mould(g, L, rng, empty=0, denominators=1) for _ in range(k)]


def gari_moulds(s, k, n=1, L=3):
    rng = random.Random(s)
    g = Alphabet.cyclic(n)
    return [random_mould(g, L, rng, empty=1, denominators=1) for _ in range(k)]


def test_arit_length_two_by_hand():
    # the two m = 2 splittings: (∅, ω1, ω2) and (ω1, ω2, ∅)
    x = RatFun.var(0, 1)
    A = Mould(T, 2, {(1,): x * x})
    B = Mould(T, 2, {(1,): x + RatFun.const(3, 1)})
    x1, x2 = RatFun.var(0, 2), RatFun.var(1, 2)
    s = x1 + x2
    assert arit(B)(A)((1, 1)) == s * s * (x1 + RatFun.const(3, 2)) - s * s * (x2 + RatFun.const(3, 2))
    assert arit(B)(A)((1,)) == RatFun.zero(1)


def test_arit_linear_in_B():
    A, = ari_moulds(1, 1)
    assert arit(Mould.zero(T, 3))(A) == Mould.zero(T, 3)


@given(seeds, gammas)
def test_ari_antisymmetric(s, n):
    A, B = ari_moulds(s, 2, n)
    assert ari(A, A) == Mould.zero(A.gamma, 3)
    assert ari(A, B) == -ari(B, A)


@settings(max_examples=10)
@given(seeds, gammas)
def test_ari_jacobi(s, n):
    A, B, C = ari_moulds(s, 3, n)
    jac = ari(A, ari(B, C)) + ari(B, ari(C, A)) + ari(C, ari(A, B))
    assert jac == Mould.zero(A.gamma, 3)


@settings(max_examples=10)
@given(seeds)
def test_preari_right_pre_lie(s):
    A, B, C = ari_moulds(s, 3)
    lhs = preari(preari(A, B), C) - preari(A, preari(B, C))
    rhs = preari(preari(A, C), B) - preari(A, preari(C, B))
    assert lhs == rhs


@given(seeds)
def test_preari_antisymmetrises_to_ari(s):
    A, B = ari_moulds(s, 2)
    assert preari(A, B) - preari(B, A) == ari(A, B)


@settings(max_examples=10)
@given(seeds, gammas)
def test_arit_is_a_derivation(s, n):
    A, B, C = ari_moulds(s, 3, n)
    assert arit(C)(mould_mul(A, B)) == mould_mul(arit(C)(A), B) + mould_mul(A, arit(C)(B))


@settings(max_examples=8)
@given(seeds, gammas)
def test_gari_group(s, n):
    A, B, C = gari_moulds(s, 3, n)
    u = Mould.unit(A.gamma, 3)
    assert gari(gari(A, B), C) == gari(A, gari(B, C))
    Ai = invgari(A)
    assert gari(A, Ai) == u and gari(Ai, A) == u
    assert invgari(Ai) == A


def test_gari_units():
    A, = gari_moulds(5, 1)
    u = Mould.unit(T, 3)
    assert invgari(u) == u
    assert gari(A, u) == A and gari(u, A) == A
    assert garit(u)(A) == A and garit(A)(u) == u


@settings(max_examples=8)
@given(seeds)
def test_garit_is_multiplicative(s):
    A, B, C = gari_moulds(s, 3)
    assert garit(C)(mould_mul(A, B)) == mould_mul(garit(C)(A), garit(C)(B))


def test_expari_zero():
    assert expari(Mould.zero(T, 4)) == Mould.unit(T, 4)


@settings(max_examples=10)
@given(seeds)
def test_expari_alternal_to_symmetral(s):
    M = ma(random_lie_dagger(T, 4, random.Random(s)))
    assert symmetry_check("alternal", M).ok
    assert symmetry_check("symmetral", expari(M)).ok


def test_ari_needs_zero_empty_component():
    A, = gari_moulds(2, 1)
    with pytest.raises(ValueError):
        expari(A)
