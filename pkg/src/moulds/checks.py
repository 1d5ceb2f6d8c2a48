"""Named verification checks grouped into suites.

A check is a function ``ctx -> (ok, witness)``; the witness is any JSON value
and is only reported on failure.  Every check draws its randomness from its
own generator seeded by (seed, suite, name), so results do not depend on the
order in which suites run.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import comb
from typing import Callable

from . import bal as B
from .braid import (BraidAlgebra, dec, dec_inv, diamond, flip, g1234, grt_representative,
                    commutator_psi_c, madec, madec_inv, mould_ev, pentagon_residual,
                    psi5_pentagon_residual, psi_p, rev, series_at)
from .config import RunConfig
from .flexion import ari, arit, expari, gari, invgari, preari
from .mould import (P4_ALPHABETS, Mould, anti, minus, mould_mul, pari, paj, pic, random_mould,
                    random_polymould, sh_map, swap, swap_inverse, symmetry_check, tensor)
from .ncseries import (Mini, NCSeries, circledast, d_psi, dmr_conditions, exp_circledast,
                       ihara_bracket, iota0, is_dmr0, is_harmonic_group_like, ma, ma_inverse,
                       ma_tensor, mi, mi_bar, phi_corr, phi_star, pi_Y, random_dagger,
                       random_group_like_dagger, random_lie_dagger, s_phi)
from .ratfun import RAT, RatFun, TruncSer, divided_difference
from .words import Alphabet, Letter, shuffle_raw, stuffle_raw


@dataclass
class Context:
    config: RunConfig
    suite: str
    name: str

    @cached_property
    def rng(self) -> random.Random:
        # one stream per check, however often it is asked for
        return random.Random(f"{self.config.seed}:{self.suite}:{self.name}")

    @property
    def gamma(self) -> Alphabet:
        return Alphabet.from_name(self.config.gamma)

    @property
    def L(self) -> int:
        return self.config.max_length

    @property
    def N(self) -> int:
        return self.config.max_degree


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    anchor: str
    fn: Callable


REGISTRY: dict[str, list[Check]] = {}


def check(suite: str, name: str, anchor: str):
    def deco(fn):
        REGISTRY.setdefault(suite, []).append(Check(suite, name, anchor, fn))
        return fn
    return deco


def _first(pairs):
    """(True, None) if every (label, lhs, rhs) agrees, else the first disagreement."""
    for label, lhs, rhs in pairs:
        if lhs != rhs:
            return False, {"case": label, "lhs": str(lhs), "rhs": str(rhs)}
    return True, None


def _report(rep):
    return rep.ok, None if rep.ok else rep.to_json()


def _grt_phi(N: int) -> NCSeries:
    s = grt_representative(3, N)
    return NCSeries.one(s.gamma, N) + s


# ---------------------------------------------------------------------------
# ratfun


@check("ratfun", "field-identities", "rational functions with linear-form denominators")
def _ratfun_field(ctx):
    rng = ctx.rng
    from .mould import random_ratfun
    cases = []
    for t in range(10):
        a, b, c = (random_ratfun(3, rng, 2, 3, 3, 1) for _ in range(3))
        cases.append((f"distributive {t}", (a + b) * c, a * c + b * c))
        f = tuple(rng.choice((-1, 1)) * rng.randint(0, 2) for _ in range(3))
        if any(f):
            lin = RatFun.form(f)
            cases.append((f"divide {t}", (a / lin) * lin, a))
        cases.append((f"negate twice {t}", a.negate_vars().negate_vars(), a))
    return _first(cases)


@check("ratfun", "cancellation", "canonical form after common-factor cancellation")
def _ratfun_cancel(ctx):
    x1, x2 = RatFun.var(0, 2), RatFun.var(1, 2)
    return _first([
        ("difference of squares", (x1 * x1 - x2 * x2) / (x1 - x2), x1 + x2),
        ("partial fractions", RatFun.inv_forms([(1, 0)], 2) - RatFun.inv_forms([(1, 1)], 2),
         RatFun.inv_forms([(1, 0), (1, 1)], 2) * x2),
    ])


@check("ratfun", "divided-difference", "(f(u) - f(v))/(u - v) on polynomials")
def _ratfun_dd(ctx):
    x1, x2 = RatFun.var(0, 2), RatFun.var(1, 2)
    got = divided_difference(x1 * x1 * x1, x2 * x2 * x2, (1, -1))
    return _first([("cubes", got, x1 * x1 + x1 * x2 + x2 * x2)])


@check("ratfun", "json-roundtrip", "exact serialisation")
def _ratfun_json(ctx):
    rng = ctx.rng
    from .mould import random_ratfun
    cases = []
    for t in range(10):
        a = random_ratfun(3, rng, 2, 3, 3, 2)
        cases.append((f"case {t}", RatFun.from_json(a.to_json(), a.nvars), a))
    return _first(cases)


# ---------------------------------------------------------------------------
# words


def _letters(n, start, total, label=1):
    from .ratfun import unit_form
    return tuple(Letter(unit_form(start + i, total), label) for i in range(n))


@check("words", "shuffle-count", "a ш b has binom(p+q, p) terms with multiplicity")
def _words_shuffle(ctx):
    cases = []
    for p in range(ctx.L + 1):
        for q in range(ctx.L + 1 - p):
            a, b = _letters(p, 0, p + q), _letters(q, p, p + q)
            cases.append((f"{p},{q}", sum(shuffle_raw(a, b).values()), comb(p + q, p)))
    return _first(cases)


@check("words", "stuffle-commutative", "the stuffle product is commutative")
def _words_stuffle(ctx):
    g = ctx.gamma
    cases = []
    for p in range(1, min(ctx.L, 4)):
        for q in range(1, min(ctx.L, 4) + 1 - p):
            a = tuple(Letter(l.u, g.symbols[i % len(g)]) for i, l in enumerate(_letters(p, 0, p + q)))
            b = tuple(Letter(l.u, g.symbols[-1]) for l in _letters(q, p, p + q))
            cases.append((f"{p},{q}", stuffle_raw(a, b, g, p + q), stuffle_raw(b, a, g, p + q)))
    return _first(cases)


# ---------------------------------------------------------------------------
# mould


@check("mould", "paj-symmetral", "paj is symmetral")
def _mould_paj(ctx):
    return _report(symmetry_check("symmetral", paj(ctx.L)))


@check("mould", "pic-symmetril", "pic = swap(paj) is symmetril")
def _mould_pic(ctx):
    return _report(symmetry_check("symmetril", pic(min(ctx.L, 4))))


@check("mould", "swap-paj-is-pic", "swap(paj) = pic")
def _mould_swap_paj(ctx):
    L = ctx.L + 2
    return _first([("all lengths", swap(paj(L)), pic(L))])


@check("mould", "swap-inverse", "swap_inverse undoes swap")
def _mould_swap_inv(ctx):
    rng = ctx.rng
    M = random_mould(ctx.gamma, min(ctx.L, 3), rng, denominators=1)
    return _first([("swap_inverse∘swap", swap_inverse(swap(M)), M),
                   ("swap∘swap_inverse", swap(swap_inverse(M)), M)])


@check("mould", "product-associative", "mould multiplication is associative")
def _mould_assoc(ctx):
    rng = ctx.rng
    L = min(ctx.L, 4)
    A, Bm, C = (random_mould(ctx.gamma, L, rng, denominators=1) for _ in range(3))
    return _first([("(AB)C", mould_mul(mould_mul(A, Bm), C), mould_mul(A, mould_mul(Bm, C)))])


@check("mould", "involutions", "pari, anti, minus are involutions; anti reverses products")
def _mould_invol(ctx):
    rng = ctx.rng
    L = min(ctx.L, 4)
    A, Bm = (random_mould(ctx.gamma, L, rng) for _ in range(2))
    return _first([
        ("pari", pari(pari(A)), A), ("anti", anti(anti(A)), A), ("minus", minus(minus(A)), A),
        ("anti(AB)", anti(mould_mul(A, Bm)), mould_mul(anti(Bm), anti(A))),
    ])


# ---------------------------------------------------------------------------
# flexion


def _flex_gamma(ctx):
    g = ctx.gamma if ctx.gamma.is_group else Alphabet.trivial()
    # thin out components so a larger alphabet costs about what the trivial one does
    return g, 1 / len(g.symbols)


def _ari_moulds(ctx, k, L):
    g, density = _flex_gamma(ctx)
    return [random_mould(g, L, ctx.rng, empty=0, denominators=1, density=density) for _ in range(k)]


@check("flexion", "ari-jacobi", "ari is antisymmetric and satisfies Jacobi")
def _flex_jacobi(ctx):
    A, Bm, C = _ari_moulds(ctx, 3, min(ctx.L, 4))
    jac = ari(A, ari(Bm, C)) + ari(Bm, ari(C, A)) + ari(C, ari(A, Bm))
    return _first([("antisymmetry", ari(A, Bm), -ari(Bm, A)), ("jacobi", jac, Mould.zero(A.gamma, A.max_length))])


@check("flexion", "preari-pre-lie", "preari is right pre-Lie")
def _flex_prelie(ctx):
    A, Bm, C = _ari_moulds(ctx, 3, min(ctx.L, 4))
    lhs = preari(preari(A, Bm), C) - preari(A, preari(Bm, C))
    rhs = preari(preari(A, C), Bm) - preari(A, preari(C, Bm))
    return _first([("associator symmetric in last two", lhs, rhs)])


@check("flexion", "arit-derivation", "arit(B) is a derivation of the mould product")
def _flex_arit(ctx):
    A, Bm, C = _ari_moulds(ctx, 3, min(ctx.L, 4))
    lhs = arit(C)(mould_mul(A, Bm))
    rhs = mould_mul(arit(C)(A), Bm) + mould_mul(A, arit(C)(Bm))
    return _first([("leibniz", lhs, rhs)])


@check("flexion", "gari-group", "gari is associative and invgari is a two-sided inverse")
def _flex_gari(ctx):
    g, density = _flex_gamma(ctx)
    L = min(ctx.L, 4)
    A, Bm, C = (random_mould(g, L, ctx.rng, empty=1, denominators=1, density=density)
                for _ in range(3))
    unit = Mould.unit(g, L)
    Ai = invgari(A)
    return _first([
        ("associativity", gari(gari(A, Bm), C), gari(A, gari(Bm, C))),
        ("right inverse", gari(Ai, A), unit), ("left inverse", gari(A, Ai), unit),
    ])


@check("flexion", "expari-symmetral", "expari sends alternal moulds to symmetral ones")
def _flex_expari(ctx):
    rng = ctx.rng
    L = min(ctx.L, 4)
    M = ma(random_lie_dagger(Alphabet.trivial(), L, rng))
    return _report(symmetry_check("symmetral", expari(M)))


# ---------------------------------------------------------------------------
# ma


@check("ma", "algebra-isomorphism", "ma(hg) = ma(h) × ma(g) and ma∘S = anti∘pari∘ma")
def _ma_hom(ctx):
    rng = ctx.rng
    cases = []
    for t in range(5):
        h, g = random_dagger(ctx.gamma, ctx.N, rng), random_dagger(ctx.gamma, ctx.N, rng)
        cases.append((f"product {t}", ma(h * g), mould_mul(ma(h), ma(g))))
        cases.append((f"antipode {t}", ma(h.antipode()), anti(pari(ma(h)))))
        cases.append((f"inverse {t}", ma_inverse(ma(h)), h))
    return _first(cases)


@check("ma", "coproduct", "ma ⊗ ma of Δ equals Sh∘ma")
def _ma_coproduct(ctx):
    rng = ctx.rng
    N = min(ctx.N, 5)
    h = random_dagger(ctx.gamma, N, rng)
    return _first([("Δ", ma_tensor(h.coproduct(), ctx.gamma), sh_map(ma(h)))])


@check("ma", "group-like-symmetral", "group-like ⇔ symmetral and Lie-like ⇔ alternal")
def _ma_exp(ctx):
    rng = ctx.rng
    N = min(ctx.N, 5)
    cases = []
    for t in range(3):
        lie = random_lie_dagger(ctx.gamma, N, rng)
        grp = lie.exp()
        junk = random_dagger(ctx.gamma, N, rng, const=1)
        cases += [
            (f"lie {t}", (lie.is_lie_like(), bool(symmetry_check("alternal", ma(lie)))), (True, True)),
            (f"group {t}", (grp.is_group_like(), bool(symmetry_check("symmetral", ma(grp)))), (True, True)),
            (f"control {t}", (junk.is_group_like(), bool(symmetry_check("symmetral", ma(junk)))), (False, False)),
        ]
    return _first(cases)


# ---------------------------------------------------------------------------
# appendices


def _group_gamma(ctx) -> Alphabet:
    return ctx.gamma if ctx.gamma.is_group else Alphabet.trivial()


@check("appendix-a", "derivation-and-brackets", "ma(D_ψφ) = arit(ma ψ)(ma φ), ma({ψ,φ}) = ari(ma φ, ma ψ)")
def _app_a(ctx):
    rng = ctx.rng
    g = _group_gamma(ctx)
    N = min(ctx.N, 5)
    psi, phi = random_dagger(g, N, rng, const=0), random_dagger(g, N, rng, const=0)
    return _first([
        ("D_psi", ma(d_psi(psi)(phi)), arit(ma(psi))(ma(phi))),
        ("s_phi", ma(s_phi(phi)(psi)), preari(ma(psi), ma(phi))),
        ("ihara", ma(ihara_bracket(psi, phi)), ari(ma(phi), ma(psi))),
    ])


@check("appendix-a", "exp-circledast", "ma∘exp^⊛ = expari∘ma")
def _app_a_exp(ctx):
    rng = ctx.rng
    g = _group_gamma(ctx)
    N = min(ctx.N, 5)
    phi = random_dagger(g, N, rng, const=0)
    return _first([("exp", ma(exp_circledast(phi)), expari(ma(phi)))])


@check("appendix-b", "circledast-gari", "ma(ψ⊛φ) = gari(ma φ, ma ψ)")
def _app_b(ctx):
    rng = ctx.rng
    g = _group_gamma(ctx)
    N = min(ctx.N, 5)
    psi, phi = random_dagger(g, N, rng, const=1), random_dagger(g, N, rng, const=1)
    return _first([("gari", ma(circledast(psi, phi)), gari(ma(phi), ma(psi)))])


@check("appendix-c", "mi-swap-ma", "mi = swap∘ma = mi-bar∘π_Y on dagger series")
def _app_c_mi(ctx):
    rng = ctx.rng
    N = min(ctx.N, 6)
    cases = []
    for t in range(3):
        phi = random_dagger(Alphabet.trivial(), N, rng)
        cases.append((f"mi {t}", mi(phi), swap(ma(phi))))
        cases.append((f"mi-bar {t}", mi_bar(pi_Y(phi)), swap(ma(phi))))
    return _first(cases)


@check("appendix-c", "mi-bar-anti-homomorphism", "mi-bar(ΦΨ) = mi-bar(Ψ) × mi-bar(Φ)")
def _app_c_anti(ctx):
    # mi itself is not anti-multiplicative on dagger series, since pi_Y is not
    # multiplicative there (f1 * [f1, f0] is a counterexample); the Y side is.
    rng = ctx.rng
    N = min(ctx.N, 6)
    cases = []
    for t in range(3):
        A, Bs = (pi_Y(random_dagger(Alphabet.trivial(), N, rng)) for _ in range(2))
        cases.append((f"case {t}", mi_bar(A * Bs), mould_mul(mi_bar(Bs), mi_bar(A))))
    return _first(cases)


@check("appendix-c", "mini-corr", "mi-bar(φ_corr) = Mini_φ")
def _app_c_mini(ctx):
    rng = ctx.rng
    N = min(ctx.N, 6)
    cases = []
    for t in range(3):
        phi = random_dagger(Alphabet.trivial(), N, rng, const=1)
        cases.append((f"case {t}", mi_bar(phi_corr(phi)), Mini(phi)))
    return _first(cases)


def dmr_family(N: int, rng: random.Random, count: int = 20) -> list:
    """Dagger series mixing harmonic group-like members and random non-members."""
    g = Alphabet.trivial()
    out = [NCSeries.one(g, N)]
    for c in (1, -2, Fraction(1, 3)):
        out.append(NCSeries.letter(1, g, N).scale(c).exp())
    phi = _grt_phi(min(N, 5))
    if N <= 5:
        out.append(iota0(phi).truncate(N) if phi.max_degree >= N else iota0(phi))
        out.append(phi)
    while len(out) < count:
        out.append(random_group_like_dagger(g, N, rng))
    return out[:count]


@check("appendix-c", "equivalent-formulation", "Δ_*(φ_*) = φ_*⊗φ_* ⇔ Mini_φ × swap(ma φ) symmetril")
def _app_c_equiv(ctx):
    rng = ctx.rng
    N = min(ctx.N, 5)
    members = 0
    for i, phi in enumerate(dmr_family(N, rng)):
        one = is_harmonic_group_like(phi_star(phi))
        two = bool(symmetry_check("symmetril", mould_mul(Mini(phi), swap(ma(phi)))))
        if one != two:
            return False, {"case": i, "harmonic": one, "symmetril": two}
        members += one
    if members == 0:
        return False, {"reason": "no member in the family"}
    return True, None


# ---------------------------------------------------------------------------
# braid


def _braid_N(ctx, n: int) -> int:
    return min(ctx.N, 4 if n == 4 else 3)


@check("braid", "relations", "defining relations of t_n reduce to zero; c_4 is central")
def _braid_rel(ctx):
    for n in (3, 4, 5):
        A = BraidAlgebra(n, _braid_N(ctx, n))
        for r in A.relations():
            if not A.element(r).is_zero():
                return False, {"n": n, "relation": str(r)}
    A = BraidAlgebra(4, _braid_N(ctx, 4))
    c = A.center()
    for gen in A.gens:
        if not c.commutator(A.t(*gen)).is_zero():
            return False, {"generator": list(gen)}
    return True, None


@check("braid", "dimensions", "dim U t_4 in degree d is the coefficient of 1/((1-t)(1-2t)(1-3t))")
def _braid_dims(ctx):
    N = _braid_N(ctx, 4)
    A = BraidAlgebra(4, N)
    want = [1, 6, 25, 90, 301][:N + 1]
    return _first([("dims", [A.dim(d) for d in range(N + 1)], want)])


def _random_t4(ctx, rng, N):
    alg = BraidAlgebra(4, N)
    f2 = random_dagger(Alphabet.block(1), N, rng)
    f3 = random_dagger(Alphabet.block(2), N, rng)
    return dec_inv([f2, f3], alg)


@check("braid", "dec-roundtrip", "dec and madec are bijections on dagger elements")
def _braid_dec(ctx):
    rng = ctx.rng
    N = _braid_N(ctx, 4)
    cases = []
    for t in range(3):
        w = _random_t4(ctx, rng, N)
        cases.append((f"dec {t}", dec_inv(dec(w), w.alg), w))
        cases.append((f"madec {t}", madec_inv(madec(w), w.alg), w))
    return _first(cases)


@check("braid", "involutions", "flip and rev are involutions; flip keeps the dagger property")
def _braid_invol(ctx):
    rng = ctx.rng
    N = _braid_N(ctx, 4)
    cases = []
    for t in range(3):
        w = _random_t4(ctx, rng, N)
        cases += [(f"flip {t}", flip(flip(w)), w), (f"rev {t}", rev(rev(w)), w),
                  (f"flip dagger {t}", flip(w).is_dagger(), True)]
    return _first(cases)


@check("braid", "g1234", "pullbacks of the pentagon along the four coface maps")
def _braid_g1234(ctx):
    N = _braid_N(ctx, 4)
    phi = _grt_phi(N)
    bad = {str(k): str(v) for k, v in g1234(phi, phi, min(N, 3)).items() if not v.is_zero()}
    return not bad, bad or None


# ---------------------------------------------------------------------------
# pentagon


@check("pentagon", "grt-solution", "M^{01,2,3}⋄M^{0,1,23} = M^{0,1,2}⋄M^{0,12,3}⋄ψ_P^{1,2,3}")
def _pent_grt(ctx):
    N = _braid_N(ctx, 4)
    phi = _grt_phi(N)
    res = pentagon_residual(ma(phi), phi)
    return not res.comps, None if not res.comps else {"residual": str(res)}


@check("pentagon", "negative-control", "a random group-like series violates the pentagon")
def _pent_neg(ctx):
    rng = ctx.rng
    N = max(3, _braid_N(ctx, 4))
    phi = random_group_like_dagger(Alphabet.trivial(), N, rng, min_degree=2)
    res = pentagon_residual(ma(phi), phi)
    return bool(res.comps), None if res.comps else {"reason": "residual vanished"}


@check("pentagon", "t5-pentagon", "the t_5 pentagon for ψ")
def _pent_t5(ctx):
    N = _braid_N(ctx, 5)
    phi = _grt_phi(max(N, 3))
    r = psi5_pentagon_residual(phi, N)
    return r.is_zero(), None if r.is_zero() else {"residual": str(r)}


@check("pentagon", "phi-change", "φ(u, w) = φ(v, w) when [u, v] = [u - v, w] = 0")
def _pent_change(ctx):
    rng = ctx.rng
    A = BraidAlgebra(4, 3)
    phi = random_group_like_dagger(Alphabet.trivial(), 3, rng)
    u = A.t(0, 2, -1) + A.t(1, 2, -1)
    v, w = A.t(0, 1), A.t(1, 2)
    return _first([("change", series_at(phi, A, {0: u, 1: w}), series_at(phi, A, {0: v, 1: w}))])


# ---------------------------------------------------------------------------
# bal


def _bal_L(ctx) -> int:
    return min(ctx.L, 3)


@check("bal", "depth-one", "bal on components of total length at most one")
def _bal_depth1(ctx):
    rng = ctx.rng
    cases = []
    for t in range(20):
        P = random_polymould(P4_ALPHABETS, 1, rng, denominators=1)
        Q = B.bal(P)
        cases += [
            (f"{t} ∅", Q(((), ())), P(((), ()))),
            (f"{t} [2]", Q(((), (2,))), P(((), (2,)))),
            (f"{t} [1] first", Q(((1,), ())), P(((), (1,)))),
            (f"{t} [1] second", Q(((), (1,))), P(((1,), ()))),
        ]
    return _first(cases)


@check("bal", "involution", "bal∘bal = id")
def _bal_invol(ctx):
    rng = ctx.rng
    cases = []
    for t in range(3):
        P = random_polymould(P4_ALPHABETS, _bal_L(ctx), rng, denominators=1)
        cases.append((f"case {t}", B.bal(B.bal(P)), P))
    return _first(cases)


@check("bal", "paj-well-balanced", "minus(paj) is well-balanced, symmetral, not even")
def _bal_paj(ctx):
    m = minus(paj(_bal_L(ctx)))
    return _first([("well-balanced", B.is_well_balanced(m), True),
                   ("as+bal", B.is_gari_as_bal(m), True),
                   ("underline", B.is_gari_as_bal_underline(m), False)])


@check("bal", "rev-bal-flip-rev", "rev∘bal = flip∘rev on madec images")
def _bal_flip(ctx):
    rng = ctx.rng
    N = min(ctx.N, 3)
    cases = []
    for t in range(3):
        P = madec(_random_t4(ctx, rng, N))
        cases.append((f"case {t}", B.p4_rev(B.bal(P)), B.p4_flip(B.p4_rev(P))))
    return _first(cases)


@check("bal", "denominators-cancel", "bal of polynomial components is polynomial")
def _bal_poly(ctx):
    rng = ctx.rng
    for t in range(3):
        P = random_polymould(P4_ALPHABETS, _bal_L(ctx), rng, family=RAT)
        Q = B.bal(P)
        if not Q.is_polynomial():
            bad = next(k for k, v in Q.comps.items() if v.den)
            return False, {"case": t, "component": B._key_str(bad), "value": str(Q.comps[bad])}
    return True, None


@check("bal", "calc-lemma", "bal(M_[1]⊗M_[2]) = rev(M^{01,2,3}⋄M^{0,1,23}), "
                            "M_[1]⊗(M_[2]×C) = rev(M^{0,1,2}⋄M^{0,12,3}⋄ψ_P^{1,2,3})")
def _bal_calc(ctx):
    N = min(ctx.N, 4)
    alg = BraidAlgebra(4, N)
    phi = _grt_phi(N)
    M = ma(phi)
    C = ma(commutator_psi_c(phi))
    g2 = Alphabet.block(2)
    from .mould import extend_by_gamma, restrict_diagonal
    lhs2 = tensor(restrict_diagonal(M, 1, Alphabet.block(1)), mould_mul(extend_by_gamma(M, g2), C))
    rhs1 = B.p4_rev(diamond(mould_ev(M, "01,2,3", alg), mould_ev(M, "0,1,23", alg), alg))
    rhs2 = B.p4_rev(diamond(diamond(mould_ev(M, "0,1,2", alg), mould_ev(M, "0,12,3", alg), alg),
                            psi_p(phi, "1,2,3", alg), alg))
    return _first([("bal side", B.bal(B.p4_of(M)), rhs1), ("C side", lhs2, rhs2)])


@check("bal", "balancing-constant", "C = ma_[2](ψ(-f1-f2, f1)) for the pentagon solution")
def _bal_const(ctx):
    N = min(ctx.N, 4)
    phi = _grt_phi(N)
    r = B.solve_balancing_constant(ma(phi))
    if not r.ok:
        return False, r.witness
    return _first([("C", r.C, ma(commutator_psi_c(phi))), ("lemma", r.checks,
                   {"C_symmetral": True, "C_length_one_zero": True})])


@check("bal", "balancing-negative-control", "a random symmetral mould is not balanced")
def _bal_neg(ctx):
    rng = ctx.rng
    N = 4  # below degree 4 a random group-like series can be balanced by accident
    M = ma(random_group_like_dagger(Alphabet.trivial(), N, rng, min_degree=2))
    r = B.solve_balancing_constant(M)
    return not r.ok, None if not r.ok else {"reason": "balanced unexpectedly"}


# ---------------------------------------------------------------------------
# paj


@check("paj", "c0-reduction", "paj(c0(ω)) = paj(ρ(ω)) for all label patterns")
def _paj_reduce(ctx):
    for d in range(1, min(ctx.L, 4) + 1):
        for p in B.all_label_patterns([B.XY, B.X, B.ZERO_LABEL], d):
            if not B.paj_reduction_check(B.labeled_word(p)):
                return False, {"labels": list(p)}
    return True, None


@check("paj", "psi-red", "(paj⊗paj)(ψ_red(w)) = paj(w) for all label patterns")
def _paj_psi(ctx):
    for d in range(1, min(ctx.L, 4) + 1):
        for p in B.all_label_patterns([B.XY, B.Y], d):
            if not B.paj_psi_red_check(B.labeled_word(p)):
                return False, {"labels": list(p)}
    return True, None


@check("paj", "random-forms", "both paj identities on random independent forms")
def _paj_random(ctx):
    rng = ctx.rng
    for d in range(1, min(ctx.L, 4) + 1):
        for _ in range(3):
            p = [rng.choice([B.XY, B.X, B.ZERO_LABEL]) for _ in range(d)]
            if not B.paj_reduction_check(B.random_lindep_word(p, d + 1, rng)):
                return False, {"identity": "c0", "labels": p}
            p = [rng.choice([B.XY, B.Y]) for _ in range(d)]
            if not B.paj_psi_red_check(B.random_lindep_word(p, d + 1, rng)):
                return False, {"identity": "psi_red", "labels": p}
    return True, None


@check("paj", "symmetral-symmetril", "paj symmetral and pic symmetril")
def _paj_sym(ctx):
    a = symmetry_check("symmetral", paj(ctx.L))
    b = symmetry_check("symmetril", pic(min(ctx.L, 4)))
    if not a.ok:
        return _report(a)
    return _report(b)


# ---------------------------------------------------------------------------
# dmr


@check("dmr", "iota0-grt", "ι₀ of the pentagon solution lies in DMR₀")
def _dmr_grt(ctx):
    N = min(ctx.N, 5)
    phi = _grt_phi(N)
    conds = dmr_conditions(iota0(phi))
    ok = all(conds.values()) and is_dmr0(iota0(phi))
    return ok, None if ok else conds


@check("dmr", "inclusion", "Mini_{ι₀φ} × swap(minus(ma φ)) is symmetril")
def _dmr_inclusion(ctx):
    N = min(ctx.N, 5)
    phi = _grt_phi(N)
    return _report(symmetry_check("symmetril", mould_mul(Mini(iota0(phi)), swap(minus(ma(phi))))))


@check("dmr", "negative-control", "exp(f1) and random group-like series are not in DMR₀")
def _dmr_neg(ctx):
    rng = ctx.rng
    N = min(ctx.N, 5)
    g = Alphabet.trivial()
    return _first([("exp(f1)", is_dmr0(NCSeries.letter(1, g, N).exp()), False),
                   ("random", is_dmr0(random_group_like_dagger(g, N, rng, min_degree=2)), False),
                   ("unit", is_dmr0(NCSeries.one(g, N)), True)])


SUITES = tuple(sorted(REGISTRY))


def checks_for(suites) -> list[Check]:
    names = SUITES if "all" in suites else tuple(sorted(set(suites)))
    return [c for s in names for c in sorted(REGISTRY[s], key=lambda c: c.name)]
