"""Moulds, their products and symmetries; paj and pic."""
import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from moulds.mould import (P4_ALPHABETS, Mould, PolyMould, anti, extend_by_gamma, minus,
                          mould_inv_mul, mould_mul, p4, paj, pari, pic, random_mould,
                          random_polymould, restrict_diagonal, sh_map, sh_star_map, swap,
                          swap_inverse, symmetry_check, tensor)
from moulds.ratfun import POL, RAT, DivisibilityError, RatFun, TruncSer
from moulds.words import Alphabet

T = Alphabet.trivial()
seeds = st.integers(0, 10 ** 9)


def inv(*forms):
    return RatFun.inv_forms(list(forms), len(forms[0]))


def paj_at(xs):
    """Oracle: 1/(x1 (x1+x2) ... (x1+...+xr)) with Fractions."""
    out, s = Fraction(1), Fraction(0)
    for x in xs:
        s += x
        out /= s
    return out


def interleavings(a, b):
    n = len(a) + len(b)
    for pos in combinations(range(n), len(a)):
        ia, ib = iter(a), iter(b)
        yield [next(ia) if k in pos else next(ib) for k in range(n)]


@pytest.mark.parametrize("p,q", [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 2), (1, 4)])
def test_paj_symmetral_numeric_oracle(p, q):
    rng = random.Random(p * 10 + q)
    for _ in range(4):
        xs = [Fraction(rng.randint(1, 9), rng.randint(1, 5)) for _ in range(p + q)]
        a, b = xs[:p], xs[p:]
        assert sum(paj_at(w) for w in interleavings(a, b)) == paj_at(a) * paj_at(b)


def test_paj_components_match_oracle():
    P = paj(4)
    pt = [Fraction(3), Fraction(-1, 2), Fraction(5, 7), Fraction(2)]
    for m in range(1, 5):
        assert P((1,) * m).evaluate(pt[:m]) == paj_at(pt[:m])


def test_paj_and_pic_symmetries():
    assert symmetry_check("symmetral", paj(5)).ok
    assert symmetry_check("symmetril", pic(4)).ok
    assert not symmetry_check("symmetril", paj(3)).ok


def test_pic_is_product_of_inverses():
    assert pic(3)((1, 1, 1)) == inv((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_swap_paj_is_pic():
    assert swap(paj(6)) == pic(6)


def test_paj_square():
    sq = mould_mul(paj(2), paj(2))
    assert sq((1,)) == RatFun.const(2, 1) * inv((1,))
    assert sq((1, 1)) == RatFun.const(2, 2) * inv((1, 0), (1, 1)) + inv((1, 0), (0, 1))


def test_inverse():
    u = Mould.unit(T, 3)
    assert mould_inv_mul(u) == u
    f = RatFun.var(0, 1) + RatFun.const(2, 1)
    B = Mould(T, 1, {(): 1, (1,): f})
    assert mould_inv_mul(B)((1,)) == -f


@given(seeds)
def test_inverse_property(s):
    B = random_mould(T, 4, random.Random(s), empty=1, denominators=1)
    assert mould_mul(mould_inv_mul(B), B) == Mould.unit(T, 4)


@given(seeds, st.sampled_from([1, 2, 3]))
def test_product_associative(s, n):
    rng = random.Random(s)
    g = Alphabet.cyclic(n)
    L = 3 if n > 1 else 4
    A, B, C = (random_mould(g, L, rng, denominators=1) for _ in range(3))
    assert mould_mul(mould_mul(A, B), C) == mould_mul(A, mould_mul(B, C))


def test_tensor_units():
    u = Mould.unit(T, 3)
    assert tensor(u, u) == PolyMould.unit((T, T), 3)


def test_swap_small_cases():
    rng = random.Random(3)
    M = random_mould(T, 3, rng, denominators=1)
    assert swap(M)((1,)) == M((1,))
    c = Mould(T, 3, {(): 2, (1,): 1, (1, 1): -3})
    assert swap(c) == c


@given(seeds, st.sampled_from([1, 2, 3]))
def test_swap_inverse_roundtrip(s, n):
    g = Alphabet.cyclic(n)
    M = random_mould(g, 3, random.Random(s), denominators=1)
    assert swap_inverse(swap(M)) == M
    assert swap(swap_inverse(M)) == M


def test_swap_is_not_its_own_inverse():
    # with a single set of variables swap undoes itself only up to the
    # difference/partial-sum change of variables, hence swap_inverse
    M = random_mould(T, 4, random.Random(8), denominators=1)
    assert swap(swap(M)) != M
    assert swap_inverse(swap(M)) == M


@given(seeds)
def test_involutions(s):
    rng = random.Random(s)
    A, B = (random_mould(T, 4, rng) for _ in range(2))
    for f in (pari, anti, minus):
        assert f(f(A)) == A
    assert anti(mould_mul(A, B)) == mould_mul(anti(B), anti(A))
    assert minus(mould_mul(A, B)) == mould_mul(minus(A), minus(B))


def test_minus_paj():
    assert minus(paj(1))((1,)) == RatFun.const(-1, 1) * inv((1,))


def test_sh_maps():
    M = random_mould(T, 3, random.Random(1), denominators=1)
    S = sh_map(M)
    x = M((1, 1))
    assert S((1,), (1,)) == x + x.rename([1, 0], 2)
    assert sh_map(Mould.unit(T, 3)) == PolyMould.unit((T, T), 3)
    St = sh_star_map(M)
    assert St((), ()) == M(())
    assert St((1,), ()) == M((1,))


def test_symmetry_of_zero_and_unit():
    assert symmetry_check("alternal", Mould.zero(T, 4)).ok
    assert symmetry_check("symmetral", Mould.unit(T, 4)).ok
    assert not symmetry_check("symmetral", Mould.zero(T, 4)).ok


def test_failed_symmetry_has_witness():
    M = Mould(T, 2, {(): 1, (1,): RatFun.var(0, 1), (1, 1): RatFun.one(2)})
    rep = symmetry_check("symmetral", M)
    assert not rep.ok and rep.to_json()["witness"]


def test_gamma_extension_and_restriction():
    M = random_mould(T, 3, random.Random(2))
    g = Alphabet.block(2)
    E = extend_by_gamma(M, g)
    assert E((2, 1)) == M((1, 1))
    assert restrict_diagonal(E, 2) == M
    assert extend_by_gamma(M, T) == M


def test_families_reject_denominators():
    with pytest.raises(DivisibilityError):
        Mould(T, 2, {(1,): inv((1,))}, family=POL)
    M = Mould(T, 3, {(1,): RatFun.var(0, 1) ** 3 + RatFun.var(0, 1)}, family=TruncSer(3))
    assert M((1,)) == RatFun.var(0, 1)


def test_labels_outside_alphabet():
    with pytest.raises(ValueError):
        Mould(T, 2, {(2,): 1})


@given(seeds)
def test_json_roundtrip(s):
    rng = random.Random(s)
    M = random_mould(Alphabet.cyclic(2), 3, rng, denominators=1)
    assert Mould.from_json(M.to_json()) == M
    P = random_polymould(P4_ALPHABETS, 2, rng, denominators=1)
    assert PolyMould.from_json(P.to_json()) == P


def test_strict_json_rejects_unreduced():
    obj = paj(1).to_json()
    obj["components"][0]["value"]["num"][0][0] = "2/2"
    assert Mould.from_json(obj) == paj(1)
    with pytest.raises(ValueError):
        Mould.from_json(obj, strict=True)


def test_p4_keys():
    P = p4(1)
    assert set(P.keys()) >= {((), ()), ((1,), ()), ((), (1,)), ((), (2,))}
