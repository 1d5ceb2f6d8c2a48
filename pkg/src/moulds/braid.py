"""Degree-truncated enveloping algebras of the infinitesimal braid Lie algebras t_n.

Generators t_ij (0 <= i < j <= n-1) with [t_ij, t_ik + t_jk] = 0 and
[t_ij, t_kl] = 0 for distinct indices.  The column of t_ij is j.  Since t_n is
the iterated semidirect product of the free Lie algebras spanned by each
column, words with non-decreasing columns form a basis; normal forms are
computed by moving a letter left past letters of higher column using

    t_ik t_ab = t_ab t_ik - [t_ab, t_ik]        (a < b < k)

with [t_ab, t_ak] = [t_ak, t_bk], [t_ab, t_bk] = [t_bk, t_ak] and zero when
i is not in {a, b}.  The right-hand brackets live in column k.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm
from typing import Iterable, Mapping, Sequence

import sympy

from .mould import Mould, PolyMould, extend_by_gamma
from .ncseries import NCSeries, _join_word, _split_word, lyndon_bracket, lyndon_words, ma_word_poly
from .ratfun import ONE, ZERO, RatFun, TruncSer, _padd, _pmul, rational, rational_str
from .words import Alphabet

SUPPORTED_N = (3, 4, 5)


def gen(i: int, j: int) -> tuple:
    """t_ij with the index pair sorted (t_ji = t_ij)."""
    if i == j:
        raise ValueError("t_ii is not a generator")
    return (i, j) if i < j else (j, i)


def column(g: tuple) -> int:
    return g[1]


class BraidAlgebra:
    """U t_n modulo degree > max_degree."""

    _instances: dict = {}

    def __new__(cls, n: int, max_degree: int):
        key = (n, max_degree)
        inst = cls._instances.get(key)
        if inst is None:
            if n not in SUPPORTED_N:
                raise ValueError(f"n must be one of {SUPPORTED_N}")
            if max_degree < 0:
                raise ValueError("max_degree >= 0")
            inst = super().__new__(cls)
            inst.n = n
            inst.max_degree = max_degree
            inst.gens = tuple((i, j) for j in range(1, n) for i in range(j))
            inst._insert = {}
            cls._instances[key] = inst
        return inst

    def __repr__(self):
        return f"U t_{self.n} (degree <= {self.max_degree})"

    def check_gen(self, g) -> tuple:
        g = gen(*g)
        if g[1] >= self.n:
            raise ValueError(f"generator t{g} outside t_{self.n}")
        return g

    @staticmethod
    def bracket_down(low: tuple, high: tuple) -> dict:
        """[low, high] for col(low) < col(high), as a sum of length-2 words in column col(high)."""
        a, b = low
        i, k = high
        if i == a:
            x, y = (a, k), (b, k)
        elif i == b:
            x, y = (b, k), (a, k)
        else:
            return {}
        return {(x, y): 1, (y, x): -1}

    def insert(self, w: tuple, g: tuple) -> dict:
        """Normal form of (normal word w) * g, truncated."""
        key = (w, g)
        hit = self._insert.get(key)
        if hit is not None:
            return hit
        if len(w) + 1 > self.max_degree:
            out = {}
        elif not w or column(w[-1]) <= column(g):
            out = {w + (g,): 1}
        else:
            u, x = w[:-1], w[-1]
            out: dict = {}
            for v, c in self.insert(u, g).items():
                for v2, c2 in self.insert(v, x).items():
                    out[v2] = out.get(v2, 0) + c * c2
            for (p, q), c in self.bracket_down(g, x).items():
                for v, c1 in self.insert(u, p).items():
                    for v2, c2 in self.insert(v, q).items():
                        out[v2] = out.get(v2, 0) - c * c1 * c2
            out = {k: v for k, v in out.items() if v}
        self._insert[key] = out
        return out

    def word_times(self, w: tuple, letters: Sequence[tuple]) -> dict:
        cur = {w: 1}
        for g in letters:
            nxt: dict = {}
            for v, c in cur.items():
                for v2, c2 in self.insert(v, g).items():
                    nxt[v2] = nxt.get(v2, 0) + c * c2
            cur = {k: v for k, v in nxt.items() if v}
        return cur

    def is_normal(self, w: Sequence[tuple]) -> bool:
        return all(column(w[i]) <= column(w[i + 1]) for i in range(len(w) - 1))

    def basis(self, d: int) -> list:
        """Normal words of degree d in a fixed order (columns non-decreasing)."""
        out = []

        def rec(prefix, mincol, left):
            if left == 0:
                out.append(prefix)
                return
            for g in self.gens:
                if column(g) >= mincol:
                    rec(prefix + (g,), column(g), left - 1)

        rec((), 0, d)
        return out

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    # element constructors ---------------------------------------------------------
    def element(self, coeffs: Mapping | None = None) -> "BraidElement":
        """Normal form of a linear combination of arbitrary words in the generators."""
        out: dict = {}
        for w, c in (coeffs or {}).items():
            c = rational(c)
            if not c or len(w) > self.max_degree:
                continue
            w = tuple(self.check_gen(g) for g in w)
            for v, k in self.word_times((), w).items():
                out[v] = out.get(v, ZERO) + c * k
        return BraidElement(self, {k: v for k, v in out.items() if v})

    def one(self) -> "BraidElement":
        return BraidElement(self, {(): ONE})

    def zero(self) -> "BraidElement":
        return BraidElement(self, {})

    def t(self, i: int, j: int, c=1) -> "BraidElement":
        return self.element({(gen(i, j),): c})

    def center(self) -> "BraidElement":
        """c_n = Σ_{i<j} t_ij."""
        return self.element({(g,): 1 for g in self.gens})

    def relations(self) -> list:
        """The defining relations as elements of the free algebra (dict word -> coeff)."""
        rels = []
        idx = range(self.n)
        for i, j, k in ((i, j, k) for i in idx for j in idx for k in idx if len({i, j, k}) == 3):
            a, b, c = gen(i, j), gen(i, k), gen(j, k)
            r: dict = {}
            for y in (b, c):
                r[(a, y)] = r.get((a, y), 0) + 1
                r[(y, a)] = r.get((y, a), 0) - 1
            rels.append({k2: v for k2, v in r.items() if v})
        for p, q in combinations(self.gens, 2):
            if len(set(p) | set(q)) == 4:
                rels.append({(p, q): 1, (q, p): -1})
        return rels


class BraidElement:
    """Element of U t_n in normal form: {normal word: coefficient}."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: BraidAlgebra, coeffs: dict):
        self.alg = alg
        self.coeffs = coeffs

    @property
    def n(self) -> int:
        return self.alg.n

    def _check(self, other):
        if not isinstance(other, BraidElement) or other.alg is not self.alg:
            raise ValueError("elements of different braid algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            v = out.get(w, ZERO) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return BraidElement(self.alg, out)

    def __neg__(self):
        return BraidElement(self.alg, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = rational(c)
        if not c:
            return self.alg.zero()
        return BraidElement(self.alg, {w: c * v for w, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, BraidElement):
            return self.scale(other)
        self._check(other)
        alg = self.alg
        out: dict = {}
        for w1, c1 in self.coeffs.items():
            for w2, c2 in other.coeffs.items():
                if len(w1) + len(w2) > alg.max_degree:
                    continue
                for v, k in alg.word_times(w1, w2).items():
                    out[v] = out.get(v, ZERO) + c1 * c2 * k
        return BraidElement(alg, {k: v for k, v in out.items() if v})

    def __rmul__(self, other):
        return self.scale(other)

    def commutator(self, other):
        return self * other - other * self

    def __eq__(self, other):
        return isinstance(other, BraidElement) and self.alg is other.alg and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.alg.n, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def homogeneous(self, d: int) -> "BraidElement":
        return BraidElement(self.alg, {w: c for w, c in self.coeffs.items() if len(w) == d})

    def truncate(self, d: int) -> "BraidElement":
        return BraidElement(self.alg, {w: c for w, c in self.coeffs.items() if len(w) <= d})

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for w, c in sorted(self.coeffs.items(), key=lambda t: (len(t[0]), t[0])):
            name = "".join(f"t{i}{j}" for i, j in w) or "1"
            parts.append(f"{rational_str(c)}*{name}")
        return " + ".join(parts)

    # coalgebra and dagger ---------------------------------------------------------
    def coproduct(self) -> dict:
        """Δ on the normal basis: subwords of normal words are normal."""
        out: dict = {}
        for w, c in self.coeffs.items():
            m = len(w)
            for k in range(m + 1):
                for S in combinations(range(m), k):
                    s = set(S)
                    key = (tuple(w[i] for i in S), tuple(w[i] for i in range(m) if i not in s))
                    out[key] = out.get(key, ZERO) + c
        return {k: v for k, v in out.items() if v}

    def e0_contraction(self, j: int) -> "BraidElement":
        """(e_{0j} ⊗ id)Δ: remove one occurrence of t_0j in every possible way."""
        g = (0, j)
        out: dict = {}
        for w, c in self.coeffs.items():
            for p, a in enumerate(w):
                if a == g:
                    k = w[:p] + w[p + 1:]
                    out[k] = out.get(k, ZERO) + c
        return BraidElement(self.alg, {k: v for k, v in out.items() if v})

    def is_dagger(self) -> bool:
        N = self.alg.max_degree
        return all(self.e0_contraction(j).truncate(N - 1).is_zero() for j in range(1, self.n))

    # serialization ----------------------------------------------------------------
    def to_json(self) -> dict:
        by_deg: dict = {}
        for w, c in sorted(self.coeffs.items(), key=lambda t: (len(t[0]), t[0])):
            d = by_deg.setdefault(len(w), {"degree": len(w), "coords": [], "basis_words": []})
            d["coords"].append(rational_str(c))
            d["basis_words"].append([f"t{i}{j}" for i, j in w])
        return {"n": self.n, "max_degree": self.alg.max_degree, "terms": list(by_deg.values())}


# ---------------------------------------------------------------------------
# homomorphisms


def substitute(alg: BraidAlgebra, source_coeffs: Mapping, images: Mapping) -> BraidElement:
    """Algebra map on words: letter a -> images[a] (a BraidElement of alg)."""
    prefix: dict = {(): alg.one()}
    out = alg.zero()
    for w in sorted(source_coeffs, key=len):
        c = source_coeffs[w]
        if len(w) > alg.max_degree:
            continue
        if w not in prefix:
            for i in range(len(w)):
                if w[: i + 1] not in prefix:
                    prefix[w[: i + 1]] = prefix[w[:i]] * images[w[i]]
        out = out + prefix[w].scale(c)
    return out


def series_at(phi: NCSeries, alg: BraidAlgebra, images: Mapping[int, BraidElement]) -> BraidElement:
    """phi with its letters replaced by braid elements."""
    return substitute(alg, phi.coeffs, images)


def fstar(f: Sequence, source: BraidAlgebra, target: BraidAlgebra):
    """Pullback f*: U t_m -> U t_n for f: {0..n-1} -> {0..m-1, None}; t_ij -> Σ t_kl over the fibres."""
    if len(f) != target.n:
        raise ValueError("f must be given on every index of the target")
    images = {}
    for g in source.gens:
        i, j = g
        fi = [k for k in range(target.n) if f[k] == i]
        fj = [l for l in range(target.n) if f[l] == j]
        images[g] = target.element({(gen(k, l),): 1 for k in fi for l in fj})

    def apply(w: BraidElement) -> BraidElement:
        if w.alg is not source:
            raise ValueError("element of the wrong algebra")
        return substitute(target, w.coeffs, images)

    return apply


def _pair_sum(alg: BraidAlgebra, A: Iterable[int], B: Iterable[int]) -> BraidElement:
    return alg.element({(gen(a, b),): 1 for a in A for b in B})


def ev_subsets(phi: NCSeries, S0, S1, S2, alg: BraidAlgebra) -> BraidElement:
    """phi(Σ_{S0×S1} t, Σ_{S1×S2} t)."""
    S0, S1, S2 = (tuple(sorted(set(S))) for S in (S0, S1, S2))
    if set(S0) & set(S1) or set(S0) & set(S2) or set(S1) & set(S2):
        raise ValueError("subsets must be disjoint")
    if any(p < 0 or p >= alg.n for p in S0 + S1 + S2):
        raise ValueError("index outside 0..n-1")
    if len(phi.gamma) != 1:
        raise ValueError("expected a series in f0, f1")
    one = phi.gamma.symbols[0]
    images = {0: _pair_sum(alg, S0, S1), one: _pair_sum(alg, S1, S2)}
    return series_at(phi, alg, images)


def parse_subsets(spec: str) -> tuple:
    """'01,2,3' -> ((0,1),(2,),(3,))."""
    return tuple(tuple(int(ch) for ch in part) for part in spec.split(","))


def ev(phi: NCSeries, spec: str, alg: BraidAlgebra) -> BraidElement:
    return ev_subsets(phi, *parse_subsets(spec), alg)


def flip(w: BraidElement) -> BraidElement:
    """t_ij -> t_{n-i,n-j} for i, j > 0 and t_0j -> -Σ_{k != n-j} t_{k,n-j}."""
    alg = w.alg
    n = alg.n
    images = {}
    for i, j in alg.gens:
        if i > 0:
            images[(i, j)] = alg.t(n - i, n - j)
        else:
            images[(i, j)] = alg.element({(gen(k, n - j),): -1 for k in range(n) if k != n - j})
    return substitute(alg, w.coeffs, images)


_REV_IMAGES = {
    # column 2: t02 -> -t02 - t12, t12 -> t12
    (0, 2): {(0, 2): -1, (1, 2): -1},
    (1, 2): {(1, 2): 1},
    # column 3: t03 -> -t03 - t13 - t23, t13 -> t23, t23 -> t13
    (0, 3): {(0, 3): -1, (1, 3): -1, (2, 3): -1},
    (1, 3): {(2, 3): 1},
    (2, 3): {(1, 3): 1},
}


def rev(w: BraidElement) -> BraidElement:
    """w2(t02,t12) w3(t03,t13,t23) -> w2(-t02-t12, t12) w3(-t03-t13-t23, t23, t13) on U t_4 dagger."""
    if w.n != 4:
        raise ValueError("rev is defined on U t_4")
    out: dict = {}
    for word, c in w.coeffs.items():
        if (0, 1) in word:
            raise ValueError("rev expects a dagger element (no t01)")
        terms = {(): c}
        for g in word:
            nxt: dict = {}
            for v, k in terms.items():
                for h, e in _REV_IMAGES[g].items():
                    nxt[v + (h,)] = nxt.get(v + (h,), ZERO) + k * e
            terms = nxt
        for v, k in terms.items():
            out[v] = out.get(v, ZERO) + k
    return BraidElement(w.alg, {k: v for k, v in out.items() if v})


# ---------------------------------------------------------------------------
# dec and madec


def block_alphabets(n: int) -> tuple:
    return tuple(Alphabet.block(k) for k in range(1, n - 1))


def dec(w: BraidElement) -> dict:
    """Split normal words by column: {(w2, w3, ...): c}, the block of column j written in f0..f_{j-1}."""
    out = {}
    n = w.n
    for word, c in w.coeffs.items():
        blocks = [[] for _ in range(n - 2)]
        for i, j in word:
            if j == 1:
                raise ValueError("dec expects a dagger element (no t01)")
            blocks[j - 2].append(i)
        key = tuple(tuple(b) for b in blocks)
        out[key] = out.get(key, ZERO) + c
    if not w.is_dagger():
        raise ValueError("dec expects a dagger element")
    return out


def dec_inv(factors, alg: BraidAlgebra, check: bool = True) -> BraidElement:
    """w2(t02,t12) w3(t03,t13,t23) ... ; factors is a list of NCSeries (pure tensor) or a dict."""
    n = alg.n
    if isinstance(factors, (list, tuple)):
        if len(factors) != n - 2:
            raise ValueError(f"expected {n - 2} factors")
        for k, s in enumerate(factors):
            if check and not s.is_dagger():
                raise ValueError(f"factor {k + 1} is not dagger")
        terms = {(): ONE}
        for s in factors:
            nxt = {}
            for key, c in terms.items():
                for w, d in s.coeffs.items():
                    nxt[key + (w,)] = nxt.get(key + (w,), ZERO) + c * d
            terms = nxt
    else:
        terms = dict(factors)
    out: dict = {}
    for key, c in terms.items():
        word = tuple((i, j + 2) for j, b in enumerate(key) for i in b)
        if len(word) > alg.max_degree or not c:
            continue
        out[word] = out.get(word, ZERO) + c
    res = BraidElement(alg, {k: v for k, v in out.items() if v})
    if check and not res.is_dagger():
        raise ValueError("non-dagger tensor")
    return res


def madec(w: BraidElement) -> PolyMould:
    """dec followed by ma_[k] on the block of column k+1."""
    n = w.n
    N = w.alg.max_degree
    acc: dict = {}
    for key, c in dec(w).items():
        labels_all = []
        ks_all = []
        ok = True
        for b in key:
            labels, ks = _split_word(b)
            if ks[0]:
                ok = False
                break
            labels_all.append(labels)
            ks_all.append(ks)
        if not ok:
            continue
        nv = sum(len(l) for l in labels_all)
        poly = {(0,) * nv: ONE}
        off = 0
        for labels, ks in zip(labels_all, ks_all):
            r = len(labels)
            p = ma_word_poly(ks, r)
            p = {(0,) * off + e + (0,) * (nv - off - r): v for e, v in p.items()}
            poly = _pmul(poly, p)
            off += r
        mk = tuple(labels_all)
        acc[mk] = _padd(acc.get(mk, {}), poly, c)
    comps = {k: RatFun._raw(sum(map(len, k)), v, {}) for k, v in acc.items() if v}
    return PolyMould(block_alphabets(n), N, comps, TruncSer(N), fix=False)


def madec_inv(P: PolyMould, alg: BraidAlgebra) -> BraidElement:
    """Inverse of madec: per block set x_i = z_i - z_{i-1} and read off words."""
    n = alg.n
    if tuple(P.alphabets) != block_alphabets(n):
        raise ValueError("expected a polymould over [1], ..., [n-2]")
    N = alg.max_degree
    out: dict = {}
    for key, v in P.comps.items():
        if v.den:
            raise ValueError(f"component {key} is not polynomial")
        rs = [len(b) for b in key]
        nz = sum(r + 1 for r in rs)
        forms = []
        zoff = 0
        for r in rs:
            for i in range(1, r + 1):
                f = [0] * nz
                f[zoff + i] = 1
                f[zoff + i - 1] = -1
                forms.append(tuple(f))
            zoff += r + 1
        z = v.substitute(forms) if forms else v
        for e, c in z.num.items():
            words = []
            zoff = 0
            for b, r in zip(key, rs):
                words.append(_join_word(b, e[zoff:zoff + r + 1]) if forms else ())
                zoff += r + 1
            if not forms:
                words = [() for _ in key]
            word = tuple((i, j + 2) for j, blk in enumerate(words) for i in blk)
            if len(word) > N:
                raise ValueError(f"component {key} exceeds the degree bound {N}")
            out[word] = out.get(word, ZERO) + c
    return BraidElement(alg, {k: v for k, v in out.items() if v})


def diamond(M: PolyMould, N: PolyMould, alg: BraidAlgebra) -> PolyMould:
    """M ⋄ N = madec(madec^-1(M) madec^-1(N))."""
    return madec(madec_inv(M, alg) * madec_inv(N, alg))


# ---------------------------------------------------------------------------
# pentagon


def _as_series(M, N: int) -> NCSeries:
    """Dagger series over f0, f1 for a mould or series argument."""
    if isinstance(M, NCSeries):
        return M
    from .ncseries import ma_inverse
    if len(M.gamma) != 1:
        raise ValueError("expected a mould over a one-letter alphabet")
    s = ma_inverse(M, N)
    if s.gamma != Alphabet.trivial():
        s = NCSeries(Alphabet.trivial(), N, {tuple(1 if a else 0 for a in w): c for w, c in s.coeffs.items()})
    return s


def mould_ev(M: Mould, spec: str, alg: BraidAlgebra) -> PolyMould:
    """M^{S0,S1,S2} = madec(ma^-1(M)^{S0,S1,S2})."""
    return madec(ev(_as_series(M, alg.max_degree), spec, alg))


def psi_p(psi: NCSeries, spec: str, alg: BraidAlgebra) -> PolyMould:
    """psi_P^{S1,S2,S3} = madec(psi^{S1,S2,S3})."""
    return madec(ev(psi, spec, alg))


def pentagon_sides(phi: NCSeries, psi: NCSeries, alg: BraidAlgebra) -> tuple:
    """(phi^{01,2,3} phi^{0,1,23}, phi^{0,1,2} phi^{0,12,3} psi^{1,2,3}) in U t_4."""
    lhs = ev(phi, "01,2,3", alg) * ev(phi, "0,1,23", alg)
    rhs = ev(phi, "0,1,2", alg) * ev(phi, "0,12,3", alg) * ev(psi, "1,2,3", alg)
    return lhs, rhs


def pentagon_residual_braid(phi: NCSeries, psi: NCSeries, N: int | None = None) -> BraidElement:
    N = phi.max_degree if N is None else N
    alg = BraidAlgebra(4, N)
    lhs, rhs = pentagon_sides(phi, psi, alg)
    return lhs - rhs


def pentagon_residual(M: Mould, psi: NCSeries, N: int | None = None) -> PolyMould:
    """M^{01,2,3} ⋄ M^{0,1,23} - M^{0,1,2} ⋄ M^{0,12,3} ⋄ psi_P^{1,2,3} as a P_4 element."""
    N = M.max_length if N is None else N
    phi = _as_series(M, N)
    return madec(pentagon_residual_braid(phi, psi.truncate(N), N))


G1234_MAPS = {
    0: ("012,3,4", "01,2,34", "01,2,3", "01,23,4", "2,3,4"),
    1: ("012,3,4", "0,12,34", "0,12,3", "0,123,4", "12,3,4"),
    2: ("01,23,4", "0,1,234", "0,1,23", "0,123,4", "1,23,4"),
    3: ("01,2,34", "0,1,234", "0,1,2", "0,12,34", "1,2,34"),
}


def g1234(phi: NCSeries, psi: NCSeries, N: int) -> dict:
    """For i = 0..3: f_i^*(pentagon residual in t_4) minus the stated t_5 expression (all should vanish)."""
    a4, a5 = BraidAlgebra(4, N), BraidAlgebra(5, N)
    lhs, rhs = pentagon_sides(phi, psi, a4)
    R = lhs - rhs
    out = {}
    for i, (p1, p2, q1, q2, s) in G1234_MAPS.items():
        f = [p if p <= i else p - 1 for p in range(5)]
        pulled = fstar(f, a4, a5)(R)
        expected = ev(phi, p1, a5) * ev(phi, p2, a5) - ev(phi, q1, a5) * ev(phi, q2, a5) * ev(psi, s, a5)
        out[i] = pulled - expected
    return out


def psi5_pentagon_residual(psi: NCSeries, N: int) -> BraidElement:
    """psi^{12,3,4} psi^{1,2,34} - psi^{1,2,3} psi^{1,23,4} psi^{2,3,4} in U t_5."""
    a5 = BraidAlgebra(5, N)
    return ev(psi, "12,3,4", a5) * ev(psi, "1,2,34", a5) - ev(psi, "1,2,3", a5) * ev(psi, "1,23,4", a5) * ev(psi, "2,3,4", a5)


# ---------------------------------------------------------------------------
# degree-by-degree solver


@dataclass
class GrtSolution:
    """Affine space base + particular + span(kernel) of degree-d pentagon solutions."""

    degree: int
    lyndon_words: list
    base: NCSeries
    particular: NCSeries | None
    kernel: list = field(default_factory=list)
    kernel_coords: list = field(default_factory=list)
    particular_coords: list | None = None

    @property
    def dim(self) -> int:
        return len(self.kernel)

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    def solution(self, params: Sequence = ()) -> NCSeries:
        if self.particular is None:
            raise ValueError("inconsistent lower part: no solution")
        out = self.base + self.particular
        for t, k in zip(params, self.kernel):
            out = out + k.scale(t)
        return out

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "dimension": self.dim,
            "consistent": self.consistent,
            "lyndon_words": ["".join(f"f{a}" for a in w) for w in self.lyndon_words],
            "particular_coords": None if self.particular_coords is None
            else [rational_str(c) for c in self.particular_coords],
            "kernel_coords": [[rational_str(c) for c in v] for v in self.kernel_coords],
        }


def _lie_pentagon(sigma: NCSeries, alg: BraidAlgebra) -> BraidElement:
    """sigma^{01,2,3} + sigma^{0,1,23} - sigma^{0,1,2} - sigma^{0,12,3} - sigma^{1,2,3}."""
    return (ev(sigma, "01,2,3", alg) + ev(sigma, "0,1,23", alg) - ev(sigma, "0,1,2", alg)
            - ev(sigma, "0,12,3", alg) - ev(sigma, "1,2,3", alg))


def _to_fraction(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def grt_solve(d: int, lower: NCSeries | None = None) -> GrtSolution:
    """Degree-d Lie corrections sigma such that phi = lower + sigma solves
    phi^{01,2,3} phi^{0,1,23} = phi^{0,1,2} phi^{0,12,3} phi^{1,2,3} through degree d.

    lower is group-like through degree d-1 (default 1); its degree-d completion is
    exp(log lower).  Coordinates refer to the Lyndon words of length d in f0 < f1."""
    gamma = Alphabet.trivial()
    if d <= 0:
        one = NCSeries.one(gamma, 0)
        return GrtSolution(d, [], one, NCSeries.zero(gamma, 0), [], [], [])
    if lower is None:
        lower = NCSeries.one(gamma, d)
    lower = NCSeries(gamma, d, {w: c for w, c in lower.coeffs.items() if len(w) < d})
    if lower.const != 1:
        raise ValueError("lower part must have constant term 1")
    low = lower.log()
    low = NCSeries(gamma, d, {w: c for w, c in low.coeffs.items() if len(w) < d})
    base = low.exp()
    alg = BraidAlgebra(4, d)
    lhs, rhs = pentagon_sides(base, base, alg)
    res = lhs - rhs
    if not res.truncate(d - 1).is_zero():
        raise ValueError("lower part does not satisfy the pentagon below degree d")
    inhom = res.homogeneous(d)
    words = [w for w in lyndon_words((0, 1), d) if len(w) == d]
    gens = [lyndon_bracket(w, gamma, d) for w in words]
    images = [_lie_pentagon(g, alg).homogeneous(d) for g in gens]
    rows = sorted({k for im in images for k in im.coeffs} | set(inhom.coeffs))
    A = sympy.Matrix(len(rows), len(gens), lambda i, j: sympy.Rational(images[j].coeffs.get(rows[i], 0)))
    b = sympy.Matrix(len(rows), 1, lambda i, j: -sympy.Rational(inhom.coeffs.get(rows[i], 0)))

    def combo(coords):
        s = NCSeries.zero(gamma, d)
        for c, g in zip(coords, gens):
            s = s + g.scale(c)
        return s

    particular, pcoords = None, None
    if not rows:
        pcoords = [Fraction(0)] * len(gens)
        particular = combo(pcoords)
    else:
        try:
            sol, params = A.gauss_jordan_solve(b)
            sol = sol.subs({p: 0 for p in params})
            pcoords = [_to_fraction(x) for x in sol]
            particular = combo(pcoords)
        except ValueError:
            pass
    kernel, kcoords = [], []
    for v in (A.nullspace() if gens else []):
        coords = [_to_fraction(x) for x in v]
        den = lcm(*[c.denominator for c in coords])
        coords = [c * den for c in coords]
        kernel.append(combo(coords))
        kcoords.append(coords)
    return GrtSolution(d, words, base, particular, kernel, kcoords, pcoords)


def grt_representative(d: int = 3, N: int | None = None) -> NCSeries:
    """First kernel vector of the degree-d solve over the trivial lower part, truncated at N (default d)."""
    sol = grt_solve(d)
    if not sol.kernel:
        raise ValueError(f"no nonzero solution in degree {d}")
    s = sol.kernel[0]
    N = d if N is None else N
    return NCSeries(s.gamma, N, s.coeffs)


def commutator_psi_c(psi: NCSeries) -> NCSeries:
    """psi(-f1-f2, f1) as a series in f1, f2 (alphabet [2])."""
    g2 = Alphabet.block(2)
    N = psi.max_degree
    one = psi.gamma.symbols[0]
    return psi.substitute({0: NCSeries(g2, N, {(1,): -1, (2,): -1}), one: NCSeries(g2, N, {(1,): 1})}, g2)
