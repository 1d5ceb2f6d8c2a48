"""The balance involution on P_4 and the paj identities.

Labeled words are tuples of ``Letter(form, label)`` with string labels taken
from ``xy``, ``y``, ``x`` and ``0``.  Every form of a word lives in the same
number of variables, and the forms of a word fed to psi must be linearly
independent.  Tensor sums are plain dicts ``{(left word, right word): coeff}``.

bal(M) on a component with first block of length r and second block labels
(l_1..l_s) is computed by expanding psi-bar on the canonical word pair

    eta = (x_1..x_r; x..x),  omega = (x_{r+1}..x_{r+s}; y or xy)

(second-block label 1 reads y, 2 reads xy), giving Σ c_j a_j ⊗ b_j.  Then

    bal(M)(x) = Σ c_j(-x) M(a_j; b_j)

where a_j sits in the first block and b_j in the second with x -> 1, xy -> 2.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Sequence

from .braid import BraidAlgebra, flip, madec, madec_inv, rev
from .mould import (P4_ALPHABETS, Mould, PolyMould, extend_by_gamma, mould_mul,
                    restrict_diagonal, symmetry_check, tensor)
from .ratfun import DivisibilityError, RatFun, independent, unit_form
from .words import Alphabet, Letter, shuffle_raw

XY, X, Y, ZERO_LABEL, END = "xy", "x", "y", "0", "1"

PSI_LABELS = frozenset((XY, Y))
C0_LABELS = frozenset((XY, X, ZERO_LABEL))


def _fadd(u, v) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def _fneg(u) -> tuple:
    return tuple(-a for a in u)


def _accumulate(acc: dict, key, c):
    v = acc.get(key)
    v = c if v is None else v + c
    if (v == 0) if isinstance(v, int) else v.is_zero():
        acc.pop(key, None)
    else:
        acc[key] = v


def labeled_word(labels: Sequence[str], nvars: int | None = None, start: int = 0) -> tuple:
    """Word with labels and forms x_{start+1}, x_{start+2}, ..."""
    n = len(labels) + start if nvars is None else nvars
    return tuple(Letter(unit_form(start + i, n), l) for i, l in enumerate(labels))


def random_lindep_word(labels: Sequence[str], nvars: int, rng: random.Random, span: int = 2) -> tuple:
    """Word with the given labels and random linearly independent forms in nvars variables."""
    d = len(labels)
    if d > nvars:
        raise ValueError("more letters than variables")
    while True:
        forms = [tuple(rng.randint(-span, span) for _ in range(nvars)) for _ in range(d)]
        if independent(forms):
            return tuple(Letter(f, l) for f, l in zip(forms, labels))


def _nvars(w) -> int | None:
    return len(w[0].u) if w else None


def _require(w, allowed, what: str):
    bad = {l.sigma for l in w} - allowed
    if bad:
        raise ValueError(f"{what} expects labels in {sorted(allowed)}, got {sorted(bad)}")


def _require_lindep(w):
    if w and not independent([l.u for l in w]):
        raise ValueError("forms of the word are linearly dependent")


# ---------------------------------------------------------------------------
# psi and its relatives


def _minus_x_minus_zero(u) -> dict:
    nu = _fneg(u)
    return {(Letter(nu, X),): 1, (Letter(nu, ZERO_LABEL),): -1}


@lru_cache(maxsize=None)
def _psi(w: tuple) -> dict:
    if all(l.sigma == Y for l in w):
        return {(w, ()): 1}
    d = len(w)
    eps = [l.sigma for l in w] + [END]
    out: dict = {}

    def spread(sub, tails, sign):
        for (a, b), c in _psi(sub).items():
            for t, s in tails.items():
                _accumulate(out, (a, b + t), sign * c * s)

    for i in range(d):
        e, nxt = eps[i], eps[i + 1]
        if e == XY and nxt in (Y, END):
            tails = {(Letter(w[i].u, X if nxt == Y else XY),): 1}
        elif e == Y and nxt == XY:
            tails = _minus_x_minus_zero(w[i].u)
        else:
            continue
        merged = (Letter(_fadd(w[i].u, w[i + 1].u), nxt),) if i + 1 < d else ()
        spread(w[:i] + merged + w[i + 2:], tails, 1)
    for i in range(1, d):
        e, prev = eps[i], eps[i - 1]
        if e == XY and prev == Y:
            tails = {(Letter(w[i].u, X),): 1}
        elif e == Y and prev == XY:
            tails = _minus_x_minus_zero(w[i].u)
        else:
            continue
        merged = (Letter(_fadd(w[i - 1].u, w[i].u), prev),)
        spread(w[:i - 1] + merged + w[i + 1:], tails, -1)
    return out


def psi(w: Sequence) -> dict:
    """psi(w) for a word over {xy, y}: {(word over {y}, word over {xy, x, 0}): int}."""
    w = tuple(w)
    _require(w, PSI_LABELS, "psi")
    _require_lindep(w)
    return dict(_psi(w))


@lru_cache(maxsize=None)
def _c0(w: tuple, n: int) -> dict:
    zeros = [i for i, l in enumerate(w) if l.sigma == ZERO_LABEL]
    if not zeros:
        return {w: RatFun.one(n)}
    i = zeros[-1]
    d = len(w)
    out: dict = {}
    merged = (Letter(_fadd(w[i].u, w[i + 1].u), w[i + 1].sigma),) if i + 1 < d else ()
    for v, c in _c0(w[:i] + merged + w[i + 2:], n).items():
        _accumulate(out, v, c)
    if i > 0:
        merged = (Letter(_fadd(w[i - 1].u, w[i].u), w[i - 1].sigma),)
        for v, c in _c0(w[:i - 1] + merged + w[i + 1:], n).items():
            _accumulate(out, v, -c)
    return {v: c.div_form(w[i].u) for v, c in out.items()}


def c0(w: Sequence, nvars: int | None = None) -> dict:
    """Remove the 0-labeled letters by divided differences: {word over {xy, x}: RatFun}.

    The rightmost 0 at position i gives (1/u_i)[w with ω_i absorbed into ω_{i+1}
    - w with ω_i absorbed into ω_{i-1}]; the merged letter keeps its neighbour's
    label, ω_i is simply dropped when it is last, and the second term is absent
    when it is first."""
    w = tuple(w)
    _require(w, C0_LABELS, "c0")
    n = _nvars(w) if nvars is None else nvars
    if n is None:
        raise ValueError("nvars is needed for the empty word")
    return dict(_c0(w, n))


def _tilde_psi(w: tuple, n: int) -> dict:
    out: dict = {}
    for (a, b), c in _psi(w).items():
        for b2, k in _c0(b, n).items():
            _accumulate(out, (a, b2), k * c)
    return out


def tilde_psi(w: Sequence, nvars: int | None = None) -> dict:
    """(Id ⊗ c0) ∘ psi."""
    w = tuple(w)
    _require(w, PSI_LABELS, "tilde_psi")
    _require_lindep(w)
    n = _nvars(w) if nvars is None else nvars
    if n is None:
        raise ValueError("nvars is needed for the empty word")
    return _tilde_psi(w, n)


def _bar_psi(eta: tuple, w: tuple, n: int) -> dict:
    out: dict = {}
    for (a, b), c in _tilde_psi(w, n).items():
        for s, k in shuffle_raw(b, eta).items():
            _accumulate(out, (a, s), c * k if k != 1 else c)
    return out


def bar_psi(eta: Sequence, w: Sequence, nvars: int | None = None) -> dict:
    """tilde_psi(w) with eta shuffled into the second factor."""
    eta, w = tuple(eta), tuple(w)
    _require(eta, frozenset((X,)), "bar_psi (first argument)")
    _require(w, PSI_LABELS, "bar_psi (second argument)")
    _require_lindep(eta + w)
    n = _nvars(eta + w) if nvars is None else nvars
    if n is None:
        raise ValueError("nvars is needed for empty words")
    return _bar_psi(eta, w, n)


def rho(w: Sequence) -> tuple:
    """Relabel every letter by 1."""
    return tuple(Letter(l.u, 1) for l in w)


def psi_red(w: Sequence) -> dict:
    """(Id ⊗ rho) ∘ psi."""
    out: dict = {}
    for (a, b), c in psi(w).items():
        _accumulate(out, (a, rho(b)), c)
    return out


# ---------------------------------------------------------------------------
# bal on P_4


_OUT_LABEL = {X: 1, XY: 2}
_IN_LABEL = {1: Y, 2: XY}


@lru_cache(maxsize=None)
def bal_expansion(r: int, labels: tuple) -> tuple:
    """Terms (key, forms, c(-x)) of bal at the component ((1,)*r, labels)."""
    n = r + len(labels)
    eta = labeled_word([X] * r, n)
    w = labeled_word([_IN_LABEL[l] for l in labels], n, start=r)
    terms = []
    for (a, b), c in sorted(_bar_psi(eta, w, n).items(), key=repr):
        key = ((1,) * len(a), tuple(_OUT_LABEL[l.sigma] for l in b))
        forms = tuple(l.u for l in a) + tuple(l.u for l in b)
        terms.append((key, forms, c.negate_vars()))
    return tuple(terms)


def _require_p4(P: PolyMould):
    if tuple(P.alphabets) != P4_ALPHABETS:
        raise ValueError("bal acts on polymoulds over the alphabets [1], [2]")


def bal_component(P: PolyMould, key) -> RatFun:
    """bal(P) at one key, before the family is applied."""
    first, second = (tuple(b) for b in key)
    n = len(first) + len(second)
    acc = RatFun.zero(n)
    for k, forms, c in bal_expansion(len(first), second):
        if k in P.comps:
            acc = acc + c * P.at(k, forms, n)
    return acc


def bal(P: PolyMould) -> PolyMould:
    """The balance involution.  Over truncated series the result must be
    polynomial; a surviving denominator raises DivisibilityError."""
    _require_p4(P)
    comps = {}
    for key in P.keys():
        v = bal_component(P, key)
        if v.is_zero():
            continue
        if P.family.kind != "rat" and v.den:
            raise DivisibilityError(f"bal left a denominator at {key}: {v}")
        comps[key] = v
    return P._new(comps)


def p4_of(M: Mould) -> PolyMould:
    """M_[1] ⊗ M_[2] for a mould over a one-letter alphabet."""
    if len(M.gamma) != 1:
        raise ValueError("expected a mould over a one-letter alphabet")
    M1 = restrict_diagonal(M, M.gamma.symbols[0], Alphabet.block(1))
    M2 = extend_by_gamma(M, Alphabet.block(2))
    return tensor(M1, M2)


def p4_rev(P: PolyMould, N: int | None = None) -> PolyMould:
    """rev transported to P_4 through madec."""
    alg = BraidAlgebra(4, P.max_length if N is None else N)
    return madec(rev(madec_inv(P, alg)))


def p4_flip(P: PolyMould, N: int | None = None) -> PolyMould:
    """flip transported to P_4 through madec."""
    alg = BraidAlgebra(4, P.max_length if N is None else N)
    return madec(flip(madec_inv(P, alg)))


# ---------------------------------------------------------------------------
# balanced moulds


@dataclass
class BalanceResult:
    ok: bool
    C: Mould | None = None
    witness: dict | None = None
    checks: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "C": None if self.C is None else self.C.to_json(),
                "witness": self.witness, "checks": self.checks}


def _key_str(key) -> str:
    return ";".join(",".join(map(str, b)) for b in key)


def solve_balancing_constant(M: Mould) -> BalanceResult:
    """Find a constant mould C over [2] with bal(M_[1] ⊗ M_[2]) = M_[1] ⊗ (M_[2] × C).

    C is read off the components with empty first block, length by length;
    the full identity is then checked on every component."""
    if M.empty != 1:
        raise ValueError("expected M(∅) = 1")
    P = p4_of(M)
    B = bal(P)
    g2 = Alphabet.block(2)
    M2 = extend_by_gamma(M, g2)
    family = M.family
    C = Mould.unit(g2, M.max_length, family)
    for s in range(1, M.max_length + 1):
        for tau in g2.tuples(s):
            v = B(((), tau))
            for k in range(1, s + 1):
                a = M2.comps.get(tau[:k])
                c = C.comps.get(tau[k:])
                if a is not None and c is not None:
                    v = v - a.extend(s) * c.extend(s, k)
            v = family.fix(v, s) if not v.den else v
            if not v.is_const():
                return BalanceResult(False, None, {"component": _key_str(((), tau)),
                                                   "reason": "not constant",
                                                   "value": str(v)})
            if not v.is_zero():
                C.comps[tau] = v
        C._cache.clear()
    rhs = tensor(restrict_diagonal(M, M.gamma.symbols[0], Alphabet.block(1)), mould_mul(M2, C))
    diff = B.first_difference(rhs)
    if diff is not None:
        key, lv, rv = diff
        return BalanceResult(False, C, {"component": _key_str(key), "reason": "mismatch",
                                        "bal": str(lv), "expected": str(rv)})
    checks = {
        "C_symmetral": bool(symmetry_check("symmetral", C)),
        "C_length_one_zero": all(C(t).is_zero() for t in g2.tuples(1)) if M.max_length else True,
    }
    return BalanceResult(True, C, None, checks)


def is_well_balanced(M: Mould) -> bool:
    P = p4_of(M)
    return bal(P) == P


def is_gari_as_bal(M: Mould) -> bool:
    """Symmetral and balanced."""
    if M.empty != 1 or not symmetry_check("symmetral", M):
        return False
    return bool(solve_balancing_constant(M))


def is_even_length_one(M: Mould) -> bool:
    if M.max_length < 1:
        return True
    v = M((M.gamma.symbols[0],))
    return v == v.negate_vars()


def is_gari_as_bal_underline(M: Mould) -> bool:
    """is_gari_as_bal with M(x_1) even."""
    return is_even_length_one(M) and is_gari_as_bal(M)


def beta_C(C: Mould, k: int, l: int) -> RatFun:
    """C on the label block (2^k, 1^l)."""
    return C((2,) * k + (1,) * l)


# ---------------------------------------------------------------------------
# paj identities


def paj_of_word(w: Sequence, nvars: int | None = None) -> RatFun:
    """paj on the forms of w (labels are ignored)."""
    w = tuple(w)
    n = _nvars(w) if nvars is None else nvars
    partial, forms = None, []
    for l in w:
        partial = l.u if partial is None else _fadd(partial, l.u)
        forms.append(partial)
    return RatFun.inv_forms(forms, n)


def paj_reduction_sides(w: Sequence) -> tuple:
    """(paj(c0(w)), paj(rho(w))) for a word over {xy, x, 0}."""
    w = tuple(w)
    _require_lindep(w)
    n = _nvars(w)
    lhs = RatFun.zero(n)
    for v, c in c0(w).items():
        lhs = lhs + c * paj_of_word(v, n)
    return lhs, paj_of_word(w, n)


def paj_reduction_check(w: Sequence) -> bool:
    lhs, rhs = paj_reduction_sides(w)
    return lhs == rhs


def paj_psi_red_sides(w: Sequence) -> tuple:
    """((paj ⊗ paj)(psi_red(w)), paj(w)) for a word over {xy, y}."""
    w = tuple(w)
    n = _nvars(w)
    lhs = RatFun.zero(n)
    for (a, b), c in psi_red(w).items():
        lhs = lhs + paj_of_word(a, n) * paj_of_word(b, n) * c
    return lhs, paj_of_word(w, n)


def paj_psi_red_check(w: Sequence) -> bool:
    lhs, rhs = paj_psi_red_sides(w)
    return lhs == rhs


def all_label_patterns(alphabet: Sequence[str], d: int):
    return product(tuple(alphabet), repeat=d)
