"""Truncated noncommutative series in f0 and f_s (s in an alphabet).

Words are tuples of ints: 0 stands for f0 and a symbol s of the alphabet for
f_s (alphabet symbols are therefore required to be nonzero).  A series keeps
words of length <= max_degree.

Besides the Hopf structure this module carries ma and its inverse, the
derivations and products transported to flexions (D_psi, s_phi, the Ihara
bracket, exp_circledast, kappa, circledast) and the Y-side objects used for
the double shuffle comparison (pi_Y, phi_corr, phi_star, the harmonic
coproduct, mi, mi-bar, Mini and the DMR predicates).
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Callable, Iterable, Mapping, Sequence

from .mould import Mould, PolyMould
from .ratfun import (ONE, ZERO, Family, RatFun, TruncSer, _padd, _pform_pow, _pmul,
                     parse_rational, rational, rational_str)
from .words import Alphabet

F0 = 0


def _check_gamma(gamma: Alphabet):
    if 0 in gamma:
        raise ValueError("alphabet symbol 0 is reserved for f0")


class NCSeries:
    """Element of Q<<f0, f_s>> modulo words longer than max_degree."""

    __slots__ = ("gamma", "max_degree", "coeffs")

    def __init__(self, gamma: Alphabet, max_degree: int, coeffs: Mapping | None = None):
        _check_gamma(gamma)
        self.gamma = gamma
        self.max_degree = max_degree
        out = {}
        letters = set(gamma.symbols) | {0}
        for w, c in (coeffs or {}).items():
            w = tuple(w)
            if len(w) > max_degree:
                continue
            if any(a not in letters for a in w):
                raise ValueError(f"word {w} uses a letter outside f0 and {gamma.name}")
            c = rational(c)
            if c:
                out[w] = out.get(w, ZERO) + c
                if not out[w]:
                    del out[w]
        self.coeffs = out

    @classmethod
    def _raw(cls, gamma, N, coeffs):
        s = object.__new__(cls)
        s.gamma, s.max_degree, s.coeffs = gamma, N, coeffs
        return s

    # constructors -----------------------------------------------------------------
    @classmethod
    def one(cls, gamma: Alphabet, N: int) -> "NCSeries":
        return cls._raw(gamma, N, {(): ONE})

    @classmethod
    def zero(cls, gamma: Alphabet, N: int) -> "NCSeries":
        return cls._raw(gamma, N, {})

    @classmethod
    def letter(cls, a: int, gamma: Alphabet, N: int, c=1) -> "NCSeries":
        return cls(gamma, N, {(a,): c})

    @classmethod
    def word(cls, w: Sequence[int], gamma: Alphabet, N: int, c=1) -> "NCSeries":
        return cls(gamma, N, {tuple(w): c})

    def _new(self, coeffs, N=None) -> "NCSeries":
        return NCSeries._raw(self.gamma, self.max_degree if N is None else N, coeffs)

    # access -------------------------------------------------------------------------
    def coeff(self, w: Sequence[int]) -> Fraction:
        return self.coeffs.get(tuple(w), ZERO)

    def __getitem__(self, w):
        return self.coeff(w)

    @property
    def const(self) -> Fraction:
        return self.coeffs.get((), ZERO)

    def letters(self) -> tuple:
        return (0,) + tuple(self.gamma.symbols)

    def homogeneous(self, d: int) -> "NCSeries":
        return self._new({w: c for w, c in self.coeffs.items() if len(w) == d})

    def truncate(self, N: int) -> "NCSeries":
        N = min(N, self.max_degree)
        return self._new({w: c for w, c in self.coeffs.items() if len(w) <= N}, N)

    def is_zero(self) -> bool:
        return not self.coeffs

    # arithmetic ---------------------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, NCSeries):
            raise TypeError("expected an NCSeries")
        if other.gamma != self.gamma:
            raise ValueError("alphabet mismatch")

    def __add__(self, other):
        if not isinstance(other, NCSeries):
            other = NCSeries.one(self.gamma, self.max_degree).scale(other)
        self._check(other)
        N = min(self.max_degree, other.max_degree)
        out = {w: c for w, c in self.coeffs.items() if len(w) <= N}
        for w, c in other.coeffs.items():
            if len(w) <= N:
                v = out.get(w, ZERO) + c
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
        return self._new(out, N)

    __radd__ = __add__

    def __neg__(self):
        return self._new({w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NCSeries":
        c = rational(c)
        if not c:
            return self._new({})
        return self._new({w: c * v for w, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, NCSeries):
            return self.scale(other)
        self._check(other)
        N = min(self.max_degree, other.max_degree)
        out: dict = {}
        for w1, c1 in self.coeffs.items():
            room = N - len(w1)
            if room < 0:
                continue
            for w2, c2 in other.coeffs.items():
                if len(w2) <= room:
                    w = w1 + w2
                    v = out.get(w, ZERO) + c1 * c2
                    if v:
                        out[w] = v
                    else:
                        del out[w]
        return self._new(out, N)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = NCSeries.one(self.gamma, self.max_degree)
        for _ in range(k):
            out = out * self
        return out

    def commutator(self, other) -> "NCSeries":
        return self * other - other * self

    def __eq__(self, other):
        if not isinstance(other, NCSeries):
            return NotImplemented
        return self.gamma == other.gamma and self.max_degree == other.max_degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.gamma, self.max_degree, frozenset(self.coeffs.items())))

    def equal_mod(self, other: "NCSeries", N: int) -> bool:
        a = {w: c for w, c in self.coeffs.items() if len(w) <= N}
        b = {w: c for w, c in other.coeffs.items() if len(w) <= N}
        return a == b

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for w, c in sorted(self.coeffs.items(), key=lambda t: (len(t[0]), t[0])):
            name = "".join(f"f{a}" for a in w) or "1"
            parts.append(f"{rational_str(c)}*{name}")
        return " + ".join(parts) + f" + O({self.max_degree + 1})"

    # Hopf structure -------------------------------------------------------------------
    def coproduct(self) -> "TensorSeries":
        """Δ with every letter primitive: a word goes to the sum over its subword splittings."""
        out: dict = {}
        for w, c in self.coeffs.items():
            n = len(w)
            for k in range(n + 1):
                for S in combinations(range(n), k):
                    Sset = set(S)
                    a = tuple(w[i] for i in S)
                    b = tuple(w[i] for i in range(n) if i not in Sset)
                    out[(a, b)] = out.get((a, b), ZERO) + c
        return TensorSeries(self.max_degree, {k: v for k, v in out.items() if v})

    def antipode(self) -> "NCSeries":
        return self._new({w[::-1]: (-c if len(w) % 2 else c) for w, c in self.coeffs.items()})

    def tensor_square(self) -> "TensorSeries":
        N = self.max_degree
        out = {}
        for w1, c1 in self.coeffs.items():
            for w2, c2 in self.coeffs.items():
                if len(w1) + len(w2) <= N:
                    out[(w1, w2)] = c1 * c2
        return TensorSeries(N, out)

    def is_group_like(self) -> bool:
        return self.const == 1 and self.coproduct() == self.tensor_square()

    def is_lie_like(self) -> bool:
        one = ()
        out = {}
        for w, c in self.coeffs.items():
            if not w:
                return False
            out[(w, one)] = c
            out[(one, w)] = out.get((one, w), ZERO) + c
        return self.coproduct() == TensorSeries(self.max_degree, out)

    def exp(self) -> "NCSeries":
        if self.const:
            raise ValueError("exp needs a series without constant term")
        total = NCSeries.one(self.gamma, self.max_degree)
        term = total
        for k in range(1, self.max_degree + 1):
            term = (term * self).scale(Fraction(1, k))
            if term.is_zero():
                break
            total = total + term
        return total

    def log(self) -> "NCSeries":
        if self.const != 1:
            raise ValueError("log needs constant term 1")
        x = self - NCSeries.one(self.gamma, self.max_degree)
        total = NCSeries.zero(self.gamma, self.max_degree)
        term = NCSeries.one(self.gamma, self.max_degree)
        for k in range(1, self.max_degree + 1):
            term = term * x
            if term.is_zero():
                break
            total = total + term.scale(Fraction((-1) ** (k + 1), k))
        return total

    def inverse(self) -> "NCSeries":
        c = self.const
        if not c:
            raise ZeroDivisionError("series without constant term is not invertible")
        x = NCSeries.one(self.gamma, self.max_degree) - self.scale(1 / c)
        total = NCSeries.one(self.gamma, self.max_degree)
        term = total
        for _ in range(self.max_degree):
            term = term * x
            if term.is_zero():
                break
            total = total + term
        return total.scale(1 / c)

    # substitution ----------------------------------------------------------------------
    def substitute(self, images: Mapping[int, "NCSeries"], gamma: Alphabet | None = None) -> "NCSeries":
        """Continuous algebra map sending letter a to images[a] (identity when absent)."""
        gamma = gamma or self.gamma
        N = min([self.max_degree] + [s.max_degree for s in images.values()])
        img = {}
        for a in self.letters():
            img[a] = images[a] if a in images else NCSeries.letter(a, gamma, N)
        prefix: dict = {(): NCSeries.one(gamma, N)}
        out = NCSeries.zero(gamma, N)
        for w in sorted(self.coeffs, key=len):
            if len(w) > N:
                continue
            v = prefix.get(w)
            if v is None:
                for i in range(len(w)):
                    if w[: i + 1] not in prefix:
                        prefix[w[: i + 1]] = prefix[w[:i]] * img[w[i]]
                v = prefix[w]
            out = out + v.scale(self.coeffs[w])
        return out

    def t_sigma(self, s) -> "NCSeries":
        """Group action f0 -> f0, f_t -> f_{st}."""
        g = self.gamma
        g.require_group()
        return self._new({tuple(a if a == 0 else g.mul(s, a) for a in w): c for w, c in self.coeffs.items()})

    # dagger condition -------------------------------------------------------------------
    def d0(self) -> "NCSeries":
        """The derivation f0 -> 1, f_s -> 0, i.e. (e0 ⊗ id)Δ."""
        out: dict = {}
        for w, c in self.coeffs.items():
            for i, a in enumerate(w):
                if a == 0:
                    k = w[:i] + w[i + 1:]
                    out[k] = out.get(k, ZERO) + c
        return self._new({k: v for k, v in out.items() if v})

    def is_dagger(self) -> bool:
        """d0 vanishes up to the truncation: words of length max_degree are unconstrained
        by longer words, so the test is exact on the kept range."""
        return self.d0().truncate(self.max_degree - 1).is_zero()

    # serialization ---------------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "gamma": self.gamma.name,
            "max_degree": self.max_degree,
            "terms": [{"word": [str(a) for a in w], "coeff": rational_str(c)}
                      for w, c in sorted(self.coeffs.items(), key=lambda t: (len(t[0]), t[0]))],
        }

    @classmethod
    def from_json(cls, obj: dict, strict: bool = False) -> "NCSeries":
        gamma = Alphabet.from_name(obj["gamma"])
        coeffs = {}
        for t in obj.get("terms", []):
            w = tuple(int(a) for a in t["word"])
            coeffs[w] = coeffs.get(w, ZERO) + parse_rational(t["coeff"], strict)
        return cls(gamma, int(obj["max_degree"]), coeffs)


class TensorSeries:
    """Degree-truncated element of a tensor square, stored as {(word, word): coefficient}."""

    def __init__(self, max_degree: int, coeffs: Mapping | None = None):
        self.max_degree = max_degree
        self.coeffs = {k: rational(v) for k, v in (coeffs or {}).items()
                       if v and _weight(k[0]) + _weight(k[1]) <= max_degree}

    def __eq__(self, other):
        return isinstance(other, TensorSeries) and self.coeffs == other.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return TensorSeries(min(self.max_degree, other.max_degree), out)

    def __mul__(self, other):
        N = min(self.max_degree, other.max_degree)
        out: dict = {}
        for (a, b), c in self.coeffs.items():
            for (x, y), d in other.coeffs.items():
                k = (a + x, b + y)
                if _weight(k[0]) + _weight(k[1]) <= N:
                    out[k] = out.get(k, ZERO) + c * d
        return TensorSeries(N, out)

    def __repr__(self):
        return " + ".join(f"{rational_str(c)}*{a}⊗{b}" for (a, b), c in sorted(self.coeffs.items())) or "0"


def _weight(w) -> int:
    """Length for f-words; sum of indices for Y-words (tagged as tuples of ('Y', k))."""
    if w and isinstance(w[0], YLetter):
        return sum(l.k for l in w)
    return len(w)


# ---------------------------------------------------------------------------
# ma and its inverse


def _split_word(w: tuple):
    """f0^{k0} f_{s1} f0^{k1} ... f_{sr} f0^{kr} -> ((s1..sr), (k0..kr))."""
    labels = []
    ks = [0]
    for a in w:
        if a == 0:
            ks[-1] += 1
        else:
            labels.append(a)
            ks.append(0)
    return tuple(labels), tuple(ks)


def _join_word(labels, ks) -> tuple:
    w = (0,) * ks[0]
    for s, k in zip(labels, ks[1:]):
        w += (s,) + (0,) * k
    return w


def _partial_sum_form(i: int, r: int) -> tuple:
    return tuple(1 if j < i else 0 for j in range(r))


def ma_word_poly(ks: Sequence[int], r: int) -> dict:
    """x1^{k1} (x1+x2)^{k2} ... (x1+..+xr)^{kr} as a raw polynomial (requires k0 = 0)."""
    poly = {(0,) * r: ONE}
    for i in range(1, r + 1):
        if ks[i]:
            poly = _pmul(poly, _pform_pow(_partial_sum_form(i, r), ks[i]))
    return poly


def ma(h: NCSeries, check: bool = True) -> Mould:
    """The mould whose length-r component is vimo(0, x1, x1+x2, ..., x1+..+xr)."""
    if check and not h.is_dagger():
        raise ValueError("ma expects a dagger series (d0 h = 0)")
    return _ma_raw(h)


def _ma_raw(h: NCSeries) -> Mould:
    N = h.max_degree
    acc: dict = {}
    for w, c in h.coeffs.items():
        labels, ks = _split_word(w)
        if ks[0]:
            continue
        r = len(labels)
        p = ma_word_poly(ks, r)
        acc[labels] = _padd(acc.get(labels, {}), p, c)
    comps = {k: RatFun._raw(len(k), v, {}) for k, v in acc.items() if v}
    return Mould(h.gamma, N, comps, TruncSer(N), fix=False)


def vimo_poly(h: NCSeries, labels: Sequence) -> dict:
    """vimo for one label tuple as a raw polynomial in z0..zr."""
    labels = tuple(labels)
    r = len(labels)
    out = {}
    for w, c in h.coeffs.items():
        lab, ks = _split_word(w)
        if lab == labels:
            out[ks] = out.get(ks, ZERO) + c
    return {k: v for k, v in out.items() if v}


def ma_inverse(M: Mould, N: int | None = None) -> NCSeries:
    """The dagger series with ma = M: set x_i = z_i - z_{i-1} and read off coefficients."""
    N = M.max_length if N is None else N
    coeffs = {}
    for labels, v in M.comps.items():
        r = len(labels)
        if v.den:
            raise ValueError(f"component {labels} is not polynomial")
        if r == 0:
            coeffs[()] = v.const_value()
            continue
        forms = []
        for i in range(1, r + 1):
            f = [0] * (r + 1)
            f[i] = 1
            f[i - 1] = -1
            forms.append(tuple(f))
        z = v.substitute(forms)
        for ks, c in z.num.items():
            if r + sum(ks) > N:
                raise ValueError(f"component {labels} exceeds the degree bound {N}")
            coeffs[_join_word(labels, ks)] = c
    return NCSeries(M.gamma, N, coeffs)


def ma_tensor(T: TensorSeries, gamma: Alphabet) -> PolyMould:
    """dima: the dimould Σ c ma(w1) ⊗ ma(w2) read word by word."""
    acc: dict = {}
    for (w1, w2), c in T.coeffs.items():
        l1, k1 = _split_word(w1)
        l2, k2 = _split_word(w2)
        if k1[0] or k2[0]:
            continue
        p, q = len(l1), len(l2)
        a = {e + (0,) * q: v for e, v in ma_word_poly(k1, p).items()}
        b = {(0,) * p + e: v for e, v in ma_word_poly(k2, q).items()}
        key = (l1, l2)
        acc[key] = _padd(acc.get(key, {}), _pmul(a, b), c)
    comps = {k: RatFun._raw(len(k[0]) + len(k[1]), v, {}) for k, v in acc.items() if v}
    return PolyMould((gamma, gamma), T.max_degree, comps, TruncSer(T.max_degree), fix=False)


# ---------------------------------------------------------------------------
# derivations and products


def d_psi(psi: NCSeries):
    """The derivation D_psi: f0 -> 0, f_s -> [t_s(psi), f_s]."""
    g = psi.gamma
    g.require_group()
    tpsi = {s: psi.t_sigma(s) for s in g.symbols}

    def apply(phi: NCSeries) -> NCSeries:
        phi._check(psi)
        N = min(phi.max_degree, psi.max_degree)
        out: dict = {}
        for w, c in phi.coeffs.items():
            for p, a in enumerate(w):
                if a == 0:
                    continue
                for u, d in tpsi[a].coeffs.items():
                    if len(w) + len(u) > N:
                        continue
                    cd = c * d
                    k1 = w[:p] + u + w[p:]
                    k2 = w[: p + 1] + u + w[p + 1:]
                    out[k1] = out.get(k1, ZERO) + cd
                    out[k2] = out.get(k2, ZERO) - cd
        return NCSeries._raw(phi.gamma, N, {k: v for k, v in out.items() if v})

    return apply


def s_phi(phi: NCSeries):
    """s_phi(psi) = psi phi + D_phi(psi)."""
    D = d_psi(phi)
    return lambda psi: psi * phi + D(psi)


def ihara_bracket(psi: NCSeries, phi: NCSeries) -> NCSeries:
    """{psi, phi} = s_psi(phi) - s_phi(psi)."""
    return s_phi(psi)(phi) - s_phi(phi)(psi)


def exp_circledast(phi: NCSeries) -> NCSeries:
    """Σ_k s_phi^k(1) / k!."""
    if phi.const:
        raise ValueError("exp_circledast needs a series without constant term")
    s = s_phi(phi)
    term = NCSeries.one(phi.gamma, phi.max_degree)
    total = term
    for k in range(1, phi.max_degree + 1):
        term = s(term)
        if term.is_zero():
            break
        total = total + term.scale(Fraction(1, factorial(k)))
    return total


def kappa(psi: NCSeries):
    """kappa_psi(phi) = phi(f0, t_s(psi) f_s t_s(psi^-1))."""
    if psi.const != 1:
        raise ValueError("kappa needs psi(∅) = 1")
    g = psi.gamma
    g.require_group()
    inv = psi.inverse()
    images = {}
    for s in g.symbols:
        f = NCSeries.letter(s, g, psi.max_degree)
        images[s] = psi.t_sigma(s) * f * inv.t_sigma(s)

    def apply(phi: NCSeries) -> NCSeries:
        return phi.substitute(images)

    return apply


def circledast(psi: NCSeries, phi: NCSeries) -> NCSeries:
    """psi ⊛ phi = kappa_psi(phi) psi."""
    return kappa(psi)(phi) * psi


# ---------------------------------------------------------------------------
# Lyndon words and random series


def lyndon_words(letters: Sequence[int], max_len: int) -> list:
    """Lyndon words over the ordered letters, by Duval's algorithm."""
    letters = sorted(letters)
    k = len(letters)
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        out.append(tuple(letters[i] for i in w))
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return out


def _std_factor(w: tuple):
    lw = set()
    for i in range(1, len(w)):
        v = w[i:]
        if _is_lyndon(v):
            return w[:i], v
    raise ValueError("not factorable")


def _is_lyndon(w: tuple) -> bool:
    return all(w < w[i:] + w[:i] for i in range(1, len(w))) if len(w) > 1 else len(w) == 1


def lyndon_bracket(w: tuple, gamma: Alphabet, N: int) -> NCSeries:
    """Lie polynomial of a Lyndon word via the standard factorization."""
    if len(w) == 1:
        return NCSeries.letter(w[0], gamma, N)
    u, v = _std_factor(w)
    return lyndon_bracket(u, gamma, N).commutator(lyndon_bracket(v, gamma, N))


def random_lie_dagger(gamma: Alphabet, N: int, rng: random.Random, min_degree: int = 1,
                      coeff: int = 3, density: float = 0.7) -> NCSeries:
    """Random Lie element without f0 term (hence dagger)."""
    letters = (0,) + tuple(gamma.symbols)
    out = NCSeries.zero(gamma, N)
    for w in lyndon_words(letters, N):
        if w == (0,) or len(w) < min_degree or rng.random() > density:
            continue
        c = rng.randint(-coeff, coeff)
        if c:
            out = out + lyndon_bracket(w, gamma, N).scale(c)
    return out


def random_group_like_dagger(gamma: Alphabet, N: int, rng: random.Random, **kw) -> NCSeries:
    return random_lie_dagger(gamma, N, rng, **kw).exp()


def random_dagger(gamma: Alphabet, N: int, rng: random.Random, const=None, coeff: int = 3,
                  density: float = 0.5) -> NCSeries:
    """Random dagger series: ma-preimage of a random polynomial mould."""
    comps = {}
    for r in range(N + 1):
        for labels in gamma.tuples(r):
            if r == 0:
                comps[()] = RatFun.const(rng.randint(-coeff, coeff) if const is None else const, 0)
                continue
            num = {}
            for d in range(N - r + 1):
                for e in _exponents(r, d):
                    if rng.random() < density:
                        c = rng.randint(-coeff, coeff)
                        if c:
                            num[e] = Fraction(c)
            comps[labels] = RatFun._raw(r, num, {})
    return ma_inverse(Mould(gamma, N, comps, TruncSer(N)), N)


def _exponents(r: int, d: int):
    if r == 0:
        if d == 0:
            yield ()
        return
    if r == 1:
        yield (d,)
        return
    for k in range(d + 1):
        for rest in _exponents(r - 1, d - k):
            yield (k,) + rest


# ---------------------------------------------------------------------------
# Y-series and the double shuffle side


class YLetter(int):
    """Index k of Y_k; a distinct type so tensor weights are computed by index."""

    @property
    def k(self) -> int:
        return int(self)


class YSeries:
    """Element of Q<<Y_1, Y_2, ...>> modulo weight > max_weight (weight of Y_k is k)."""

    def __init__(self, max_weight: int, coeffs: Mapping | None = None):
        self.max_weight = max_weight
        out = {}
        for w, c in (coeffs or {}).items():
            w = tuple(YLetter(k) for k in w)
            if any(k < 1 for k in w):
                raise ValueError("Y indices are >= 1")
            if sum(w) > max_weight:
                continue
            c = rational(c)
            if c:
                out[w] = out.get(w, ZERO) + c
        self.coeffs = {w: c for w, c in out.items() if c}

    @classmethod
    def one(cls, N: int) -> "YSeries":
        return cls(N, {(): 1})

    def coeff(self, w) -> Fraction:
        return self.coeffs.get(tuple(YLetter(k) for k in w), ZERO)

    @property
    def const(self) -> Fraction:
        return self.coeffs.get((), ZERO)

    def __add__(self, other):
        N = min(self.max_weight, other.max_weight)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, ZERO) + c
        return YSeries(N, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = rational(c)
        return YSeries(self.max_weight, {w: c * v for w, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, YSeries):
            return self.scale(other)
        N = min(self.max_weight, other.max_weight)
        out: dict = {}
        for a, c in self.coeffs.items():
            wa = sum(a)
            for b, d in other.coeffs.items():
                if wa + sum(b) <= N:
                    out[a + b] = out.get(a + b, ZERO) + c * d
        return YSeries(N, out)

    def exp(self) -> "YSeries":
        if self.const:
            raise ValueError("exp needs a series without constant term")
        total = YSeries.one(self.max_weight)
        term = total
        for k in range(1, self.max_weight + 1):
            term = (term * self).scale(Fraction(1, k))
            if not term.coeffs:
                break
            total = total + term
        return total

    def __eq__(self, other):
        return isinstance(other, YSeries) and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{rational_str(c)}*" + ("".join(f"Y{k}" for k in w) or "1")
                          for w, c in sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), t[0])))

    def tensor_square(self) -> TensorSeries:
        out = {}
        for a, c in self.coeffs.items():
            for b, d in self.coeffs.items():
                out[(a, b)] = c * d
        return TensorSeries(self.max_weight, out)

    def to_json(self) -> dict:
        return {"max_weight": self.max_weight,
                "terms": [{"word": list(map(int, w)), "coeff": rational_str(c)} for w, c in sorted(self.coeffs.items())]}


def _delta_star_letter(n: int, N: int) -> TensorSeries:
    Y = lambda k: (YLetter(k),)
    out = {(Y(n), ()): ONE, ((), Y(n)): ONE}
    for i in range(1, n):
        out[(Y(i), Y(n - i))] = ONE
    return TensorSeries(N, out)


def delta_star(Phi: YSeries) -> TensorSeries:
    """Harmonic coproduct, multiplicative on words."""
    N = Phi.max_weight
    unit = TensorSeries(N, {((), ()): ONE})
    cache = {(): unit}
    total = TensorSeries(N, {})
    for w in sorted(Phi.coeffs, key=len):
        if w not in cache:
            for i in range(len(w)):
                if w[: i + 1] not in cache:
                    cache[w[: i + 1]] = cache[w[:i]] * _delta_star_letter(w[i], N)
        t = cache[w]
        c = Phi.coeffs[w]
        total = total + TensorSeries(N, {k: c * v for k, v in t.coeffs.items()})
    return total


def _require_two_letters(phi: NCSeries):
    if len(phi.gamma) != 1:
        raise ValueError("expected a series in f0, f1 (one-letter alphabet)")
    return phi.gamma.symbols[0]


def pi_Y(phi: NCSeries) -> YSeries:
    """f1 f0^{k1-1} ... f1 f0^{kr-1} -> Y_{k1} ... Y_{kr}; words starting with f0 vanish."""
    one = _require_two_letters(phi)
    out = {}
    for w, c in phi.coeffs.items():
        labels, ks = _split_word(w)
        if ks[0]:
            continue
        out[tuple(k + 1 for k in ks[1:])] = c
    return YSeries(phi.max_degree, out)


def _zeta_terms(phi: NCSeries) -> dict:
    """k -> <phi | f1 f0^{k-1}> for 2 <= k <= N."""
    one = _require_two_letters(phi)
    return {k: phi.coeff((one,) + (0,) * (k - 1)) for k in range(2, phi.max_degree + 1)}


def phi_corr(phi: NCSeries) -> YSeries:
    """exp(Σ_{k>=2} (-1)^{k-1} <phi|f1 f0^{k-1}>/k Y_1^k).

    The sign (-1)^{k-1} is the one for which weight-3 Lie elements can be
    harmonic-primitive at all; with (-1)^k the double shuffle set would be
    trivial modulo degree 4."""
    N = phi.max_degree
    expo = {}
    for k, c in _zeta_terms(phi).items():
        if c:
            expo[(1,) * k] = Fraction((-1) ** (k - 1)) * c / k
    return YSeries(N, expo).exp()


def phi_star(phi: NCSeries) -> YSeries:
    return pi_Y(phi) * phi_corr(phi)


def mi(phi: NCSeries, check: bool = True) -> Mould:
    """mi^r(x1..xr) = vimo(0, x_r, ..., x_1)."""
    if check and not phi.is_dagger():
        raise ValueError("mi expects a dagger series")
    one = _require_two_letters(phi)
    N = phi.max_degree
    acc: dict = {}
    for w, c in phi.coeffs.items():
        labels, ks = _split_word(w)
        if ks[0]:
            continue
        r = len(labels)
        e = [0] * r
        for i in range(1, r + 1):
            e[r - i] = ks[i]
        acc.setdefault(labels, {})
        acc[labels][tuple(e)] = acc[labels].get(tuple(e), ZERO) + c
    comps = {k: RatFun(len(k), v) for k, v in acc.items()}
    return Mould(phi.gamma, N, comps, TruncSer(N))


def mi_bar(Phi: YSeries, gamma: Alphabet | None = None) -> Mould:
    """mi-bar^r(x1..xr) = Σ <Phi|k1..kr> x1^{kr-1} ... xr^{k1-1}."""
    gamma = gamma or Alphabet.trivial()
    s = gamma.symbols[0]
    N = Phi.max_weight
    acc: dict = {}
    for w, c in Phi.coeffs.items():
        r = len(w)
        e = tuple(w[r - 1 - i] - 1 for i in range(r))
        key = (s,) * r
        acc.setdefault(key, {})
        acc[key][e] = acc[key].get(e, ZERO) + c
    comps = {k: RatFun(len(k), v) for k, v in acc.items()}
    return Mould(gamma, N, comps, TruncSer(N))


def dimi_bar(T: TensorSeries, gamma: Alphabet | None = None) -> PolyMould:
    gamma = gamma or Alphabet.trivial()
    s = gamma.symbols[0]
    acc: dict = {}
    for (a, b), c in T.coeffs.items():
        p, q = len(a), len(b)
        e = tuple(a[p - 1 - i] - 1 for i in range(p)) + tuple(b[q - 1 - i] - 1 for i in range(q))
        key = ((s,) * p, (s,) * q)
        acc.setdefault(key, {})
        acc[key][e] = acc[key].get(e, ZERO) + c
    comps = {k: RatFun(p + q, v) for k, v in acc.items() for p, q in [(len(k[0]), len(k[1]))]}
    return PolyMould((gamma, gamma), T.max_degree, comps, TruncSer(T.max_degree))


def mono_coefficients(phi: NCSeries) -> list:
    """Mono_r for r <= N from exp(Σ_{k>=2} (-1)^{k-1} zeta(k)/k t^k), zeta(k) = <phi|f1 f0^{k-1}>
    (sign matched to phi_corr so that mi-bar(phi_corr) = Mini)."""
    N = phi.max_degree
    a = [ZERO] * (N + 1)
    for k, c in _zeta_terms(phi).items():
        zeta = c
        a[k] = Fraction((-1) ** (k - 1)) * zeta / k
    # b = exp(a) via b' = a' b
    b = [ZERO] * (N + 1)
    b[0] = ONE
    for n in range(1, N + 1):
        b[n] = sum(k * a[k] * b[n - k] for k in range(1, n + 1)) / n
    return b


def Mini(phi: NCSeries, gamma: Alphabet | None = None) -> Mould:
    """The constant mould with length-m component Mono_m."""
    gamma = gamma or Alphabet.trivial()
    s = gamma.symbols[0]
    b = mono_coefficients(phi)
    comps = {(s,) * m: b[m] for m in range(len(b)) if b[m]}
    return Mould(gamma, phi.max_degree, comps, TruncSer(phi.max_degree))


def iota0(phi: NCSeries) -> NCSeries:
    """phi(-f0, f1)."""
    return phi._new({w: (-c if w.count(0) % 2 else c) for w, c in phi.coeffs.items()})


def is_harmonic_group_like(Phi: YSeries) -> bool:
    return Phi.const == 1 and delta_star(Phi) == Phi.tensor_square()


def dmr_conditions(phi: NCSeries) -> dict:
    one = _require_two_letters(phi)
    return {
        "unit": phi.const == 1,
        "group_like": phi.is_group_like(),
        "harmonic_group_like": is_harmonic_group_like(phi_star(phi)),
        "f0_coefficient": phi.coeff((0,)) == 0,
        "f1_coefficient": phi.coeff((one,)) == 0,
    }


def is_dmr(phi: NCSeries) -> bool:
    return all(dmr_conditions(phi).values())


def is_dmr0(phi: NCSeries) -> bool:
    one = _require_two_letters(phi)
    return is_dmr(phi) and phi.coeff((one, 0)) == 0
