"""Shuffle, stuffle and flexions on bi-layered words."""
from collections import Counter
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

from moulds.ratfun import RatFun, unit_form
from moulds.words import (Alphabet, Letter, Word, flexion, shuffle, shuffle_raw, stuffle,
                          stuffle_raw, word)


def L(i, n, s=1):
    return Letter(unit_form(i, n), s)


def interleavings(a, b):
    """Independent oracle: choose the positions of a's letters."""
    n = len(a) + len(b)
    out = Counter()
    for pos in combinations(range(n), len(a)):
        ia, ib, w = iter(a), iter(b), []
        for k in range(n):
            w.append(next(ia) if k in pos else next(ib))
        out[tuple(w)] += 1
    return dict(out)


def test_shuffle_small_cases():
    a, b, c = L(0, 3), L(1, 3), L(2, 3)
    assert shuffle_raw((a,), (b,)) == {(a, b): 1, (b, a): 1}
    assert shuffle_raw((), (a, b)) == {(a, b): 1}
    assert shuffle_raw((a, b), (c,)) == {(a, b, c): 1, (a, c, b): 1, (c, a, b): 1}


@given(st.integers(0, 4), st.integers(0, 4))
def test_shuffle_matches_interleaving_oracle(p, q):
    n = p + q
    a = tuple(L(i, n) for i in range(p))
    b = tuple(L(p + i, n) for i in range(q))
    got = shuffle_raw(a, b)
    assert got == interleavings(a, b)
    assert sum(got.values()) == comb(n, p)
    assert got == shuffle_raw(b, a)


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_shuffle_associative(p, q, r):
    n = p + q + r
    a = tuple(L(i, n) for i in range(p))
    b = tuple(L(p + i, n) for i in range(q))
    c = tuple(L(p + q + i, n) for i in range(r))

    def sh(x, y):
        out = Counter()
        for w1, c1 in x.items():
            for w2, c2 in y.items():
                for w, c3 in shuffle_raw(w1, w2).items():
                    out[w] += c1 * c2 * c3
        return dict(out)
    assert sh(sh({a: 1}, {b: 1}), {c: 1}) == sh({a: 1}, sh({b: 1}, {c: 1}))


def test_shuffle_repeated_letters_carry_multiplicity():
    a = L(0, 1)
    assert shuffle_raw((a,), (a,)) == {(a, a): 2}


def test_stuffle_length_one():
    g = Alphabet.trivial()
    a, b = (L(0, 2),), (L(1, 2),)
    got = stuffle_raw(a, b, g, 2)
    d = RatFun.inv_forms([(1, -1)], 2)
    assert got == {a + b: RatFun.one(2), b + a: RatFun.one(2), a: d, b: -d}


def test_stuffle_labels_multiply():
    g = Alphabet.cyclic(2)
    a, b = (L(0, 2, 2),), (L(1, 2, 2),)
    got = stuffle_raw(a, b, g, 2)
    assert set(got) == {a + b, b + a, (L(0, 2, 1),), (L(1, 2, 1),)}


def test_stuffle_equal_leading_forms_vanish():
    g = Alphabet.trivial()
    a = (L(0, 1),)
    assert stuffle_raw(a, a, g, 1) == {}


def test_stuffle_with_empty():
    g = Alphabet.trivial()
    a = (L(0, 1),)
    assert stuffle_raw((), a, g, 1) == {a: RatFun.one(1)}


def test_stuffle_needs_group():
    with pytest.raises(ValueError):
        stuffle_raw((L(0, 2),), (L(1, 2),), Alphabet.block(2), 2)


@pytest.mark.parametrize("p,q", [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3)])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_stuffle_commutative_and_coefficients(p, q, n):
    g = Alphabet.cyclic(n)
    d = p + q
    a = tuple(L(i, d, g.symbols[i % n]) for i in range(p))
    b = tuple(L(p + i, d, g.symbols[-1]) for i in range(q))
    ab, ba = stuffle_raw(a, b, g, d), stuffle_raw(b, a, g, d)
    assert ab == ba
    for w, c in ab.items():
        if len(w) == d:
            assert c.is_const() and c.const_value() > 0


def test_flexions():
    g = Alphabet.trivial()
    beta = word([(0, 0, 1)], [1])
    alpha = word([(1, 0, 0), (0, 1, 0)], [1, 1])
    assert flexion("ur", beta, alpha) == word([(1, 0, 1), (0, 1, 0)], [1, 1])
    empty = Word((), "X")
    assert flexion("ur", empty, alpha) == alpha
    assert flexion("ur", alpha, empty) == empty
    assert flexion("lr", beta, alpha, g) == alpha
    with pytest.raises(ValueError):
        flexion("lr", beta, alpha, Alphabet.block(2))


def test_lower_flexion_divides_labels():
    g = Alphabet.cyclic(3)
    beta = word([(0, 0, 1)], [2])
    alpha = word([(1, 0, 0), (0, 1, 0)], [2, 3])
    # labels multiplied by the inverse of 2, i.e. shifted by -1 in Z/3
    assert flexion("lr", beta, alpha, g).labels == (1, 2)


def test_shuffle_wordsum():
    w1, w2 = word([(1, 0)], [1]), word([(0, 1)], [1])
    s = shuffle(w1, w2)
    assert len(s) == 2 and s.coeff(w1 + w2) == RatFun.one(2)
    with pytest.raises(ValueError):
        shuffle(w1, Word(w2.letters, "Y"))
