"""Flexion operators on moulds: arit, ari, preari, expari, garit, gari, invgari."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .mould import Mould, mould_inv_mul, mould_mul
from .ratfun import RatFun, unit_form
from .words import Letter, llflex, lrflex, ulflex, urflex


def _unit_letters(labels, m):
    return tuple(Letter(unit_form(i, m), s) for i, s in enumerate(labels))


def _val(M: Mould, w, m: int) -> RatFun:
    return M.at(tuple(l.sigma for l in w), tuple(l.u for l in w), m)


def _require_group(*moulds):
    for M in moulds:
        M.gamma.require_group()
    g = moulds[0].gamma
    for M in moulds[1:]:
        if M.gamma != g:
            raise ValueError("alphabet mismatch")


# ---------------------------------------------------------------------------
# arit and the Lie structure


def arit_component(B: Mould, A: Mould, labels) -> RatFun:
    m = len(labels)
    acc = RatFun.zero(m)
    if m < 2:
        return acc
    g = A.gamma
    w = _unit_letters(labels, m)
    for i in range(m + 1):
        for j in range(i + 1, m):
            # w = alpha beta gamma with beta = w[i:j], gamma = w[j:] nonempty
            al, be, ga = w[:i], w[i:j], w[j:]
            b = _val(B, llflex(be, ga, g), m)
            if not b.is_zero():
                a = _val(A, al + urflex(be, ga), m)
                if not a.is_zero():
                    acc = acc + a * b
    for i in range(1, m):
        for j in range(i + 1, m + 1):
            # alpha = w[:i], beta = w[i:j] nonempty
            al, be, ga = w[:i], w[i:j], w[j:]
            b = _val(B, lrflex(al, be, g), m)
            if not b.is_zero():
                a = _val(A, ulflex(al, be) + ga, m)
                if not a.is_zero():
                    acc = acc - a * b
    return acc


def arit(B: Mould):
    """The linear map arit(B) on moulds."""
    B.gamma.require_group()

    def apply(A: Mould) -> Mould:
        _require_group(A, B)
        L = min(A.max_length, B.max_length)
        family = A.family.combine(B.family)
        comps = {}
        for m in range(2, L + 1):
            for labels in A.gamma.tuples(m):
                v = arit_component(B, A, labels)
                if not v.is_zero():
                    comps[labels] = family.fix(v, m)
        return Mould(A.gamma, L, comps, family)

    return apply


def _require_empty(value, *moulds):
    for M in moulds:
        if M.empty != value:
            raise ValueError(f"expected M(∅) = {value}, got {M.empty}")


def ari(A: Mould, B: Mould) -> Mould:
    """arit(B)(A) - arit(A)(B) + [A, B] on ARI."""
    _require_empty(0, A, B)
    return arit(B)(A) - arit(A)(B) + mould_mul(A, B) - mould_mul(B, A)


def preari(A: Mould, B: Mould) -> Mould:
    """arit(B)(A) + A x B."""
    return arit(B)(A) + mould_mul(A, B)


def expari(A: Mould) -> Mould:
    """Σ_k preari_k(A)/k! with preari_0 = 1 and preari_k(A) = preari(preari_{k-1}(A), A)."""
    _require_empty(0, A)
    term = Mould.unit(A.gamma, A.max_length, A.family)
    total = term
    for k in range(1, A.max_length + 1):
        term = preari(term, A)
        if not term.comps:
            break
        total = total + term.scale(Fraction(1, factorial(k)))
    return total


# ---------------------------------------------------------------------------
# garit and the group structure


@lru_cache(maxsize=None)
def garit_patterns(m: int) -> tuple:
    """Length patterns ((a1,b1,c1), ..., (as,bs,cs)) of x = α1β1γ1⋯αsβsγs
    with every βi nonempty and every γj α(j+1) nonempty."""
    out = []

    def rec(rest, need_gap, acc):
        for a in range(rest + 1):
            if need_gap and a == 0:
                continue
            for b in range(1, rest - a + 1):
                for c in range(rest - a - b + 1):
                    left = rest - a - b - c
                    t = acc + ((a, b, c),)
                    if left == 0:
                        out.append(t)
                    else:
                        rec(left, c == 0, t)

    if m > 0:
        rec(m, False, ())
    return tuple(out)


def garit_component(B: Mould, Binv: Mould, A: Mould, labels) -> RatFun:
    m = len(labels)
    if m == 0:
        return RatFun.const(A.empty, 0)
    g = A.gamma
    w = _unit_letters(labels, m)
    acc = RatFun.zero(m)
    for pat in garit_patterns(m):
        pos = 0
        arg = ()
        factor = None
        for a, b, c in pat:
            al, be, ga = w[pos:pos + a], w[pos + a:pos + a + b], w[pos + a + b:pos + a + b + c]
            pos += a + b + c
            arg += ulflex(urflex(al, be), ga)
            if al:
                f = _val(B, llflex(al, be, g), m)
                factor = f if factor is None else factor * f
                if f.is_zero():
                    break
            if ga:
                f = _val(Binv, lrflex(be, ga, g), m)
                factor = f if factor is None else factor * f
                if f.is_zero():
                    break
        else:
            v = _val(A, arg, m)
            if v.is_zero():
                continue
            acc = acc + (v if factor is None else v * factor)
    return acc


def garit(B: Mould, Binv: Mould | None = None):
    """The map garit(B) for B with B(∅) = 1."""
    B.gamma.require_group()
    _require_empty(1, B)
    Binv = Binv if Binv is not None else mould_inv_mul(B)

    def apply(A: Mould) -> Mould:
        _require_group(A, B)
        L = min(A.max_length, B.max_length)
        family = A.family.combine(B.family)
        comps = {}
        for m in range(L + 1):
            for labels in A.gamma.tuples(m):
                v = garit_component(B, Binv, A, labels)
                if not v.is_zero():
                    comps[labels] = family.fix(v, m)
        return Mould(A.gamma, L, comps, family)

    return apply


def gari(A: Mould, B: Mould) -> Mould:
    """gari(A, B) = garit(B)(A) x B on GARI."""
    _require_empty(1, A, B)
    return mould_mul(garit(B)(A), B)


def invgari(B: Mould) -> Mould:
    """C with gari(C, B) = 1, built length by length."""
    _require_empty(1, B)
    B.gamma.require_group()
    Binv = mould_inv_mul(B)
    family = B.family
    C = Mould.unit(B.gamma, B.max_length, family)
    G = {(): RatFun.one(0)}  # components of garit(B)(C) on shorter words
    for m in range(1, B.max_length + 1):
        fresh = {}
        for labels in B.gamma.tuples(m):
            g0 = garit_component(B, Binv, C, labels)
            tot = g0
            for i in range(m):
                b = B.comps.get(labels[i:])
                gp = G.get(labels[:i])
                if b is not None and gp is not None:
                    tot = tot + gp.extend(m) * b.extend(m, i)
            fresh[labels] = (family.fix(-tot, m), g0)
        for labels, (c, g0) in fresh.items():
            if not c.is_zero():
                C.comps[labels] = c
            gv = g0 + c
            if not gv.is_zero():
                G[labels] = gv
        C._cache.clear()
    return C
