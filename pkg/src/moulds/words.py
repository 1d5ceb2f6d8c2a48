"""Words over bi-layer letters (linear form, label), shuffle, stuffle and flexions.

A letter pairs an integer linear form u in x1..xd with a label from an
alphabet.  In X-orientation the form is written on top, in Y-orientation at
the bottom; the orientation only changes how a word is printed and which
product (shuffle or stuffle) is meaningful for it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct
from typing import Callable, Hashable, Iterable, NamedTuple, Sequence

from .ratfun import RatFun, form_sum, _form_str


class Alphabet:
    """Finite label set with an optional abelian group law."""

    def __init__(self, symbols: Sequence[Hashable], mul: Callable | None = None,
                 identity: Hashable | None = None, name: str | None = None, check: bool = True):
        self.symbols = tuple(symbols)
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("repeated symbols")
        self._mul = mul
        self.identity = identity
        self.name = name or "{" + ",".join(map(str, self.symbols)) + "}"
        self._index = {s: i for i, s in enumerate(self.symbols)}
        self._inv = {}
        if mul is not None:
            if identity not in self._index:
                raise ValueError("identity is not a symbol")
            for a in self.symbols:
                inv = [b for b in self.symbols if mul(a, b) == identity]
                if len(inv) != 1:
                    raise ValueError(f"{a!r} has no unique inverse")
                self._inv[a] = inv[0]
            if check:
                for a, b in iproduct(self.symbols, repeat=2):
                    if mul(a, b) not in self._index:
                        raise ValueError("group law is not closed")
                    if mul(a, b) != mul(b, a):
                        raise ValueError("group law is not commutative")
                for a, b, c in iproduct(self.symbols, repeat=3):
                    if mul(mul(a, b), c) != mul(a, mul(b, c)):
                        raise ValueError("group law is not associative")
                for a in self.symbols:
                    if mul(identity, a) != a:
                        raise ValueError("identity law fails")

    # constructors ---------------------------------------------------------------
    @classmethod
    def cyclic(cls, n: int) -> "Alphabet":
        """mu_n as symbols 1..n; symbol k stands for zeta^(k-1), so 1 is the identity."""
        if n < 1:
            raise ValueError("n >= 1")
        return cls(range(1, n + 1), lambda a, b: (a + b - 2) % n + 1, 1,
                   name="trivial" if n == 1 else f"z{n}", check=False)

    @classmethod
    def trivial(cls) -> "Alphabet":
        return cls.cyclic(1)

    @classmethod
    def plain(cls, symbols: Sequence[Hashable]) -> "Alphabet":
        return cls(symbols)

    @classmethod
    def block(cls, k: int) -> "Alphabet":
        """[k] = {1..k} as a plain label set."""
        return cls(range(1, k + 1), name=f"[{k}]")

    @classmethod
    def from_name(cls, name: str) -> "Alphabet":
        name = name.strip().lower()
        if name in ("trivial", "1", "z1"):
            return cls.trivial()
        if name.startswith("z") and name[1:].isdigit():
            return cls.cyclic(int(name[1:]))
        if name.startswith("[") and name.endswith("]"):
            return cls.block(int(name[1:-1]))
        raise ValueError(f"unknown alphabet {name!r}")

    # group law ------------------------------------------------------------------
    @property
    def is_group(self) -> bool:
        return self._mul is not None

    def require_group(self):
        if self._mul is None:
            raise ValueError(f"alphabet {self.name} has no group law")

    def mul(self, a, b):
        self.require_group()
        return self._mul(a, b)

    def inv(self, a):
        self.require_group()
        return self._inv[a]

    def div(self, a, b):
        """a * b^-1."""
        return self.mul(a, self.inv(b))

    def index(self, s) -> int:
        return self._index[s]

    def __contains__(self, s):
        return s in self._index

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def tuples(self, m: int):
        return iproduct(self.symbols, repeat=m)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.name == other.name and self.symbols == other.symbols

    def __hash__(self):
        return hash((self.name, self.symbols))

    def __repr__(self):
        return f"Alphabet({self.name})"


class Letter(NamedTuple):
    u: tuple
    sigma: Hashable

    def __repr__(self):
        return f"({_form_str(self.u)};{self.sigma})"


@dataclass(frozen=True)
class Word:
    letters: tuple = ()
    orientation: str = "X"

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(Letter(tuple(l[0]), l[1]) for l in self.letters))
        if self.orientation not in ("X", "Y"):
            raise ValueError("orientation is X or Y")
        ar = {len(l.u) for l in self.letters}
        if len(ar) > 1:
            raise ValueError("letters of different arity")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.letters[i], self.orientation)
        return self.letters[i]

    def __add__(self, other: "Word") -> "Word":
        _same(self, other)
        return Word(self.letters + other.letters, self.orientation)

    @property
    def forms(self):
        return tuple(l.u for l in self.letters)

    @property
    def labels(self):
        return tuple(l.sigma for l in self.letters)

    def arity(self, default: int = 0) -> int:
        return len(self.letters[0].u) if self.letters else default

    def __repr__(self):
        if not self.letters:
            return "∅"
        top = ",".join(_form_str(l.u) for l in self.letters)
        bot = ",".join(str(l.sigma) for l in self.letters)
        return f"({top} / {bot})" if self.orientation == "X" else f"({bot} / {top})"


def word(forms: Iterable, labels: Iterable, orientation: str = "X") -> Word:
    return Word(tuple(Letter(tuple(u), s) for u, s in zip(forms, labels)), orientation)


def _same(a: Word, b: Word):
    if a.orientation != b.orientation:
        raise ValueError("orientation mismatch")
    if a.letters and b.letters and len(a.letters[0].u) != len(b.letters[0].u):
        raise ValueError("arity mismatch")


class WordSum:
    """Finite sum of words with rational-function coefficients."""

    def __init__(self, nvars: int, terms: dict | None = None, orientation: str = "X"):
        self.nvars = nvars
        self.orientation = orientation
        self.terms: dict = {}
        for w, c in (terms or {}).items():
            self.add(w, c)

    def add(self, w, c):
        if isinstance(w, Word):
            w = w.letters
        if not isinstance(c, RatFun):
            c = RatFun.const(c, self.nvars)
        v = self.terms.get(w)
        v = c if v is None else v + c
        if v.is_zero():
            self.terms.pop(w, None)
        else:
            self.terms[w] = v

    def items(self):
        for w, c in sorted(self.terms.items(), key=lambda t: _word_key(t[0])):
            yield Word(w, self.orientation), c

    def coeff(self, w) -> RatFun:
        if isinstance(w, Word):
            w = w.letters
        return self.terms.get(w, RatFun.zero(self.nvars))

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return isinstance(other, WordSum) and self.terms == other.terms

    def __add__(self, other):
        out = WordSum(self.nvars, dict(self.terms), self.orientation)
        for w, c in other.terms.items():
            out.add(w, c)
        return out

    def __repr__(self):
        return " + ".join(f"{c}*{w}" for w, c in self.items()) or "0"


def _word_key(w):
    return tuple((l.u, str(l.sigma)) for l in w)


# ---------------------------------------------------------------------------
# shuffle and stuffle on raw letter tuples


@lru_cache(maxsize=None)
def shuffle_raw(a: tuple, b: tuple) -> dict:
    """a ш b as {word tuple: positive integer}."""
    if not a:
        return {b: 1}
    if not b:
        return {a: 1}
    out: dict = {}
    for w, c in shuffle_raw(a[1:], b).items():
        k = (a[0],) + w
        out[k] = out.get(k, 0) + c
    for w, c in shuffle_raw(a, b[1:]).items():
        k = (b[0],) + w
        out[k] = out.get(k, 0) + c
    return out


def shuffle(w1: Word, w2: Word) -> WordSum:
    _same(w1, w2)
    d = w1.arity(w2.arity())
    return WordSum(d, shuffle_raw(w1.letters, w2.letters), w1.orientation)


def stuffle_raw(a: tuple, b: tuple, alphabet: Alphabet, nvars: int) -> dict:
    """a ш* b as {word tuple: RatFun}, letters (u, sigma) read in Y-orientation."""
    alphabet.require_group()
    return _stuffle(a, b, alphabet, nvars)


@lru_cache(maxsize=None)
def _stuffle(a: tuple, b: tuple, alphabet: Alphabet, nvars: int) -> dict:
    if not a:
        return {b: RatFun.one(nvars)}
    if not b:
        return {a: RatFun.one(nvars)}
    (v, s), (v2, s2) = a[0], b[0]
    if v == v2:
        return {}
    out: dict = {}

    def put(w, c):
        x = out.get(w)
        x = c if x is None else x + c
        if x.is_zero():
            out.pop(w, None)
        else:
            out[w] = x

    for w, c in _stuffle(a[1:], b, alphabet, nvars).items():
        put((a[0],) + w, c)
    for w, c in _stuffle(a, b[1:], alphabet, nvars).items():
        put((b[0],) + w, c)
    rest = _stuffle(a[1:], b[1:], alphabet, nvars)
    if rest:
        diff = tuple(x - y for x, y in zip(v, v2))
        inv = RatFun.one(nvars).div_form(diff)
        ss = alphabet.mul(s, s2)
        for w, c in rest.items():
            cc = c * inv
            put((Letter(v, ss),) + w, cc)
            put((Letter(v2, ss),) + w, -cc)
    return out


def stuffle(w1: Word, w2: Word, alphabet: Alphabet) -> WordSum:
    _same(w1, w2)
    if w1.orientation != "Y":
        raise ValueError("stuffle is defined on Y-oriented words")
    d = w1.arity(w2.arity())
    return WordSum(d, stuffle_raw(w1.letters, w2.letters, alphabet, d), "Y")


# ---------------------------------------------------------------------------
# flexions (argument order as in the two-slot notation: the modified word is
# alpha, the modifying word is beta)


def urflex(beta: Sequence, alpha: Sequence) -> tuple:
    """Upper-right: alpha with the sum of beta's forms added to its first form."""
    if not alpha:
        return ()
    if not beta:
        return tuple(alpha)
    d = len(alpha[0][0])
    u0 = form_sum([alpha[0][0]] + [l[0] for l in beta], d)
    return (Letter(u0, alpha[0][1]),) + tuple(alpha[1:])


def ulflex(alpha: Sequence, beta: Sequence) -> tuple:
    """Upper-left: alpha with the sum of beta's forms added to its last form."""
    if not alpha:
        return ()
    if not beta:
        return tuple(alpha)
    d = len(alpha[0][0])
    u = form_sum([alpha[-1][0]] + [l[0] for l in beta], d)
    return tuple(alpha[:-1]) + (Letter(u, alpha[-1][1]),)


def lrflex(beta: Sequence, alpha: Sequence, alphabet: Alphabet) -> tuple:
    """Lower-right: alpha's labels multiplied by the inverse of beta's last label."""
    if not alpha:
        return ()
    if not beta:
        return tuple(alpha)
    t = alphabet.inv(beta[-1][1])
    return tuple(Letter(l[0], alphabet.mul(t, l[1])) for l in alpha)


def llflex(alpha: Sequence, beta: Sequence, alphabet: Alphabet) -> tuple:
    """Lower-left: alpha's labels multiplied by the inverse of beta's first label."""
    if not alpha:
        return ()
    if not beta:
        return tuple(alpha)
    t = alphabet.inv(beta[0][1])
    return tuple(Letter(l[0], alphabet.mul(l[1], t)) for l in alpha)


FLEXIONS = ("ur", "ul", "lr", "ll")


def flexion(kind: str, a: Word, b: Word, alphabet: Alphabet | None = None) -> Word:
    """Apply one flexion; arguments follow the two-slot notation.

    kind "ur": urflex(a, b) modifies b;  "ul": ulflex(a, b) modifies a;
    kind "lr": lrflex(a, b) modifies b;  "ll": llflex(a, b) modifies a.
    """
    _same(a, b)
    if a.orientation != "X":
        raise ValueError("flexions act on X-oriented words")
    if kind == "ur":
        return Word(urflex(a.letters, b.letters))
    if kind == "ul":
        return Word(ulflex(a.letters, b.letters))
    if kind in ("lr", "ll"):
        if alphabet is None or not alphabet.is_group:
            raise ValueError("lower flexions need an alphabet with a group law")
        if kind == "lr":
            return Word(lrflex(a.letters, b.letters, alphabet))
        return Word(llflex(a.letters, b.letters, alphabet))
    raise ValueError(f"unknown flexion {kind!r}")
