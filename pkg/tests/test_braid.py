"""Infinitesimal braid algebras, dec/madec, flip/rev and the pentagon."""
import random
from fractions import Fraction
from itertools import combinations, product

import pytest

from moulds.braid import (BraidAlgebra, commutator_psi_c, dec, dec_inv, diamond, flip, g1234,
                          grt_representative, grt_solve, madec, madec_inv, mould_ev,
                          pentagon_residual, psi5_pentagon_residual, rev, series_at)
from moulds.mould import Mould, PolyMould
from moulds.ncseries import NCSeries, ma, random_dagger, random_group_like_dagger
from moulds.words import Alphabet

T = Alphabet.trivial()


def free_quotient_dims(n, N):
    """Oracle: dim of the degree-d part of Q<t_ij>/(relations), by elimination
    on the span of u r v inside the free algebra (no normal forms involved)."""
    gens = [(i, j) for j in range(n) for i in range(j)]
    rels = []
    for i, j, k in product(range(n), repeat=3):
        if len({i, j, k}) == 3:
            a, b, c = tuple(sorted((i, j))), tuple(sorted((i, k))), tuple(sorted((j, k)))
            r = {}
            for y in (b, c):
                r[(a, y)] = r.get((a, y), 0) + 1
                r[(y, a)] = r.get((y, a), 0) - 1
            rels.append(r)
    for p, q in combinations(gens, 2):
        if len(set(p) | set(q)) == 4:
            rels.append({(p, q): 1, (q, p): -1})
    dims = []
    for d in range(N + 1):
        rows = []
        for r in rels:
            for left in range(d - 1):
                for u in product(gens, repeat=left):
                    for v in product(gens, repeat=d - 2 - left):
                        rows.append({u + w + v: Fraction(c) for w, c in r.items()})
        dims.append(len(gens) ** d - _rank(rows))
    return dims


def _rank(rows):
    pivots = {}
    rank = 0
    for row in rows:
        row = {k: v for k, v in row.items() if v}
        while row:
            k = min(row)
            if k not in pivots:
                pivots[k] = {kk: vv / row[k] for kk, vv in row.items()}
                rank += 1
                break
            p = pivots[k]
            c = row[k]
            for kk, vv in p.items():
                row[kk] = row.get(kk, 0) - c * vv
                if not row[kk]:
                    del row[kk]
    return rank


@pytest.mark.parametrize("n,N", [(3, 3), (4, 3), (5, 2)])
def test_dimensions_against_free_quotient(n, N):
    A = BraidAlgebra(n, N)
    assert [A.dim(d) for d in range(N + 1)] == free_quotient_dims(n, N)


def test_dimensions_hilbert_series():
    A = BraidAlgebra(4, 4)
    assert [A.dim(d) for d in range(5)] == [1, 6, 25, 90, 301]


@pytest.mark.parametrize("n,N", [(3, 3), (4, 3), (5, 3)])
def test_relations_vanish(n, N):
    A = BraidAlgebra(n, N)
    assert all(A.element(r).is_zero() for r in A.relations())


def test_center():
    A = BraidAlgebra(4, 3)
    c = A.center()
    assert all(c.commutator(A.t(*g)).is_zero() for g in A.gens)


def _random_t4(rng, N):
    alg = BraidAlgebra(4, N)
    return dec_inv([random_dagger(Alphabet.block(1), N, rng),
                    random_dagger(Alphabet.block(2), N, rng)], alg)


def test_dec_examples():
    A = BraidAlgebra(4, 3)
    assert dec(A.t(1, 2)) == {((1,), ()): 1}
    assert dec(A.one()) == {((), ()): 1}
    assert madec(A.one()) == PolyMould.unit(madec(A.one()).alphabets, 3).with_family(madec(A.one()).family)
    assert madec(A.t(1, 2)).comps == {((1,), ()): madec(A.t(1, 2)).comps[((1,), ())]}
    assert madec(A.t(1, 2))((1,), ()).is_const()


def test_dec_rejects_non_dagger():
    A = BraidAlgebra(4, 2)
    with pytest.raises(ValueError):
        dec(A.t(0, 1))


@pytest.mark.parametrize("seed", range(4))
def test_dec_roundtrips(seed):
    rng = random.Random(seed)
    w = _random_t4(rng, 4)
    assert dec_inv(dec(w), w.alg) == w
    assert madec_inv(madec(w), w.alg) == w


@pytest.mark.parametrize("seed", range(3))
def test_flip_rev_involutions(seed):
    w = _random_t4(random.Random(seed), 3)
    assert flip(flip(w)) == w
    assert rev(rev(w)) == w
    assert flip(w).is_dagger()


def test_diamond_unit_and_associativity():
    rng = random.Random(5)
    alg = BraidAlgebra(4, 3)
    M, N, P = (madec(_random_t4(rng, 3)) for _ in range(3))
    u = madec(alg.one())
    assert diamond(M, u, alg) == M
    assert diamond(diamond(M, N, alg), P, alg) == diamond(M, diamond(N, P, alg), alg)


def test_series_at_unit():
    A = BraidAlgebra(4, 3)
    assert series_at(NCSeries.one(T, 3), A, {0: A.t(0, 1), 1: A.t(1, 2)}) == A.one()


def test_grt_solve_dimensions():
    assert [grt_solve(d).dim for d in (1, 2, 3, 4)] == [0, 1, 1, 0]
    assert grt_solve(0).dim == 0
    sol = grt_solve(3)
    assert sol.kernel_coords == [[-1, 1]]
    assert sol.particular.is_zero() and sol.solution([0]) == sol.base


def test_pentagon_residuals():
    phi = NCSeries.one(T, 3) + grt_representative(3, 3)
    assert not pentagon_residual(ma(phi), phi).comps
    one = NCSeries.one(T, 3)
    assert not pentagon_residual(ma(one), one).comps
    bad = random_group_like_dagger(T, 3, random.Random(2), min_degree=2)
    assert pentagon_residual(ma(bad), bad).comps


def test_pentagon_consequences():
    phi = NCSeries.one(T, 3) + grt_representative(3, 3)
    assert all(v.is_zero() for v in g1234(phi, phi, 3).values())
    assert psi5_pentagon_residual(phi, 3).is_zero()


def test_commutator_constant_is_not_trivial():
    phi = NCSeries.one(T, 3) + grt_representative(3, 3)
    C = ma(commutator_psi_c(phi))
    assert C.comps == {(): C(()), (1, 2, 2): C((1, 2, 2)), (2, 1, 2): C((2, 1, 2)),
                       (2, 2, 1): C((2, 2, 1))}
    assert [C(k).const_value() for k in [(1, 2, 2), (2, 1, 2), (2, 2, 1)]] == [-1, 2, -1]


def test_unsupported_n():
    with pytest.raises(ValueError):
        BraidAlgebra(6, 2)
