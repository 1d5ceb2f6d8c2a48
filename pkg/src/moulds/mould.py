"""Moulds, dimoulds and polymoulds with the x-product, tensor products,
swap/pari/anti/minus, the Sh and Sh_* maps and the symmetry predicates.

A mould is stored as a dictionary from label tuples to rational functions;
the component for labels (s1..sm) is a function of x1..xm.  Components that
vanish are not stored.  Every mould carries a length bound L and only
components of length <= L are meaningful.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Callable, Iterable, Sequence

from .ratfun import RAT, POL, Family, RatFun, rational, unit_form, form_normalize
from .words import Alphabet, Letter, shuffle_raw, stuffle_raw


def _as_ratfun(v, nvars: int) -> RatFun:
    if isinstance(v, RatFun):
        if v.nvars != nvars:
            raise ValueError(f"component has {v.nvars} variables, expected {nvars}")
        return v
    return RatFun.const(v, nvars)


def _is_unit(f) -> int | None:
    hit = None
    for i, a in enumerate(f):
        if a:
            if a != 1 or hit is not None:
                return None
            hit = i
    return hit


def evaluate_at(value: RatFun, forms: Sequence[Sequence[int]], nvars: int) -> RatFun:
    """value(forms) as a function of nvars variables."""
    if not forms:
        return value.extend(nvars) if value.nvars == 0 else value
    pos = [_is_unit(f) for f in forms]
    if None not in pos and len(set(pos)) == len(pos):
        return value.rename(pos, nvars)
    return value.substitute(forms)


class Mould:
    """Mould over an alphabet, truncated at length max_length."""

    def __init__(self, gamma: Alphabet, max_length: int, comps: dict | None = None,
                 family: Family = RAT, fix: bool = True):
        self.gamma = gamma
        self.max_length = max_length
        self.family = family
        self.comps: dict = {}
        self._cache: dict = {}
        for labels, v in (comps or {}).items():
            labels = tuple(labels)
            m = len(labels)
            if m > max_length:
                continue
            if any(s not in gamma for s in labels):
                raise ValueError(f"label {labels} outside alphabet {gamma.name}")
            v = _as_ratfun(v, m)
            if fix:
                v = family.fix(v, m)
            if not v.is_zero():
                self.comps[labels] = v

    # construction -----------------------------------------------------------------
    @classmethod
    def from_function(cls, gamma: Alphabet, max_length: int, fn: Callable, family: Family = RAT) -> "Mould":
        """fn(labels) gives the component for a label tuple (None means zero)."""
        comps = {}
        for m in range(max_length + 1):
            for labels in gamma.tuples(m):
                v = fn(labels)
                if v is not None:
                    comps[labels] = _as_ratfun(v, m)
        return cls(gamma, max_length, comps, family)

    @classmethod
    def unit(cls, gamma: Alphabet, max_length: int, family: Family = RAT) -> "Mould":
        return cls(gamma, max_length, {(): 1}, family)

    @classmethod
    def zero(cls, gamma: Alphabet, max_length: int, family: Family = RAT) -> "Mould":
        return cls(gamma, max_length, {}, family)

    def _new(self, comps: dict, max_length: int | None = None, family: Family | None = None) -> "Mould":
        return Mould(self.gamma, self.max_length if max_length is None else max_length,
                     comps, self.family if family is None else family)

    # access -------------------------------------------------------------------------
    def __call__(self, labels: Sequence = ()) -> RatFun:
        labels = tuple(labels)
        if len(labels) > self.max_length:
            raise ValueError(f"length {len(labels)} beyond the bound {self.max_length}")
        v = self.comps.get(labels)
        return v if v is not None else RatFun.zero(len(labels))

    def at(self, labels: Sequence, forms: Sequence[Sequence[int]], nvars: int | None = None) -> RatFun:
        """Component for labels evaluated at the given linear forms."""
        labels = tuple(labels)
        forms = tuple(tuple(f) for f in forms)
        if len(labels) != len(forms):
            raise ValueError("one form per label")
        if nvars is None:
            nvars = len(forms[0]) if forms else 0
        key = (labels, forms, nvars)
        r = self._cache.get(key)
        if r is None:
            v = self.comps.get(labels)
            if v is None:
                r = RatFun.zero(nvars)
            elif not labels:
                r = RatFun.const(v.const_value(), nvars)
            else:
                r = evaluate_at(v, forms, nvars)
            self._cache[key] = r
        return r

    @property
    def empty(self) -> Fraction:
        v = self.comps.get(())
        return v.const_value() if v is not None else Fraction(0)

    def labels(self, m: int):
        return self.gamma.tuples(m)

    def items(self):
        for m in range(self.max_length + 1):
            for labels in self.gamma.tuples(m):
                v = self.comps.get(labels)
                if v is not None:
                    yield labels, v

    def is_constant(self) -> bool:
        return all(v.is_const() for v in self.comps.values())

    def is_polynomial(self) -> bool:
        return all(v.is_poly() for v in self.comps.values())

    # linear structure ------------------------------------------------------------------
    def _check(self, other: "Mould"):
        if not isinstance(other, Mould):
            raise TypeError("expected a Mould")
        if self.gamma != other.gamma:
            raise ValueError("alphabet mismatch")

    def __add__(self, other: "Mould") -> "Mould":
        self._check(other)
        L = min(self.max_length, other.max_length)
        comps = {k: v for k, v in self.comps.items() if len(k) <= L}
        for k, v in other.comps.items():
            if len(k) <= L:
                comps[k] = comps[k] + v if k in comps else v
        return self._new(comps, L, self.family.combine(other.family))

    def __neg__(self) -> "Mould":
        return self._new({k: -v for k, v in self.comps.items()})

    def __sub__(self, other: "Mould") -> "Mould":
        return self + (-other)

    def scale(self, c) -> "Mould":
        c = rational(c)
        return self._new({k: v * c for k, v in self.comps.items()})

    def __mul__(self, other):
        if isinstance(other, Mould):
            return mould_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def truncate(self, L: int) -> "Mould":
        return self._new(self.comps, min(L, self.max_length))

    def with_family(self, family: Family) -> "Mould":
        return Mould(self.gamma, self.max_length, self.comps, family)

    def map_components(self, fn: Callable) -> "Mould":
        return self._new({k: fn(k, v) for k, v in self.comps.items()})

    def __eq__(self, other):
        if not isinstance(other, Mould):
            return NotImplemented
        return self.gamma == other.gamma and self.max_length == other.max_length and self.comps == other.comps

    def __hash__(self):
        return hash((self.gamma, self.max_length, frozenset(self.comps.items())))

    def equal_upto(self, other: "Mould", L: int) -> bool:
        a = {k: v for k, v in self.comps.items() if len(k) <= L}
        b = {k: v for k, v in other.comps.items() if len(k) <= L}
        return a == b

    def first_difference(self, other: "Mould", L: int | None = None):
        """(labels, self value, other value) of the first differing component, or None."""
        if L is None:
            L = min(self.max_length, other.max_length)
        for m in range(L + 1):
            for labels in self.gamma.tuples(m):
                a, b = self(labels), other(labels)
                if a != b:
                    return labels, a, b
        return None

    def __repr__(self):
        parts = [f"{list(k)}: {v}" for k, v in self.items()]
        return f"Mould[{self.gamma.name}, L={self.max_length}, {self.family}]{{" + "; ".join(parts) + "}"

    # serialization ------------------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "family": str(self.family),
            "gamma": self.gamma.name,
            "max_length": self.max_length,
            "components": [
                {"length": len(k), "labels": list(k), "value": v.to_json()} for k, v in self.items()
            ],
        }

    @classmethod
    def from_json(cls, obj: dict, gamma: Alphabet | None = None, strict: bool = False) -> "Mould":
        gamma = gamma or Alphabet.from_name(obj["gamma"])
        family = Family.from_json(obj.get("family", "Rat"))
        comps = {}
        for c in obj.get("components", []):
            labels = tuple(c["labels"])
            if c.get("length", len(labels)) != len(labels):
                raise ValueError("length field disagrees with labels")
            comps[labels] = RatFun.from_json(c["value"], len(labels), strict)
        return cls(gamma, int(obj["max_length"]), comps, family)


# ---------------------------------------------------------------------------
# products


def mould_mul(A: Mould, B: Mould) -> Mould:
    """(A x B)(w) = sum over w = w1 w2 of A(w1) B(w2)."""
    A._check(B)
    L = min(A.max_length, B.max_length)
    comps = {}
    for m in range(L + 1):
        for labels in A.gamma.tuples(m):
            acc = None
            for i in range(m + 1):
                a = A.comps.get(labels[:i])
                if a is None:
                    continue
                b = B.comps.get(labels[i:])
                if b is None:
                    continue
                t = a.extend(m) * b.extend(m, i)
                acc = t if acc is None else acc + t
            if acc is not None and not acc.is_zero():
                comps[labels] = acc
    return Mould(A.gamma, L, comps, A.family.combine(B.family))


def mould_inv_mul(B: Mould) -> Mould:
    """Inverse for the x-product, built length by length."""
    b0 = B.empty
    if not b0:
        raise ZeroDivisionError("B(∅) = 0 has no inverse")
    inv0 = 1 / b0
    comps = {(): RatFun.const(inv0, 0)}
    for m in range(1, B.max_length + 1):
        for labels in B.gamma.tuples(m):
            acc = None
            for i in range(m):
                a = comps.get(labels[:i])
                b = B.comps.get(labels[i:])
                if a is None or b is None:
                    continue
                t = a.extend(m) * b.extend(m, i)
                acc = t if acc is None else acc + t
            if acc is not None:
                acc = B.family.fix(acc * (-inv0), m)
                if not acc.is_zero():
                    comps[labels] = acc
    return B._new(comps)


def bracket(A: Mould, B: Mould) -> Mould:
    """[A, B] = A x B - B x A."""
    return mould_mul(A, B) - mould_mul(B, A)


# ---------------------------------------------------------------------------
# involutions and swap


def pari(M: Mould) -> Mould:
    return M._new({k: (-v if len(k) % 2 else v) for k, v in M.comps.items()})


def anti(M: Mould) -> Mould:
    comps = {}
    for k, v in M.comps.items():
        m = len(k)
        comps[k[::-1]] = v.rename(list(range(m - 1, -1, -1)), m)
    return M._new(comps)


def minus(M):
    if isinstance(M, PolyMould):
        return M._new({k: v.negate_vars() for k, v in M.comps.items()})
    return M._new({k: v.negate_vars() for k, v in M.comps.items()})


def involution(kind: str, M: Mould) -> Mould:
    if kind == "pari":
        return pari(M)
    if kind == "anti":
        return anti(M)
    if kind == "minus":
        return minus(M)
    raise ValueError(f"unknown involution {kind!r}")


def swap_forms(m: int) -> tuple:
    """Arguments v_m, v_{m-1}-v_m, ..., v_1-v_2 as vectors in v_1..v_m."""
    out = []
    for k in range(1, m + 1):
        f = [0] * m
        if k == 1:
            f[m - 1] = 1
        else:
            f[m - k] = 1
            f[m - k + 1] = -1
        out.append(tuple(f))
    return tuple(out)


def swap(M: Mould) -> Mould:
    """swap(M)(s; v) = M(v_m, v_{m-1}-v_m, ..., v_1-v_2; s1..sm, s1..s_{m-1}, ..., s1)."""
    g = M.gamma
    g.require_group()
    comps = {}
    for m in range(M.max_length + 1):
        forms = swap_forms(m)
        for labels in g.tuples(m):
            pref = []
            acc = g.identity
            for s in labels:
                acc = g.mul(acc, s)
                pref.append(acc)
            target = tuple(reversed(pref))
            if target in M.comps:
                v = M.at(target, forms, m) if m else M.comps[()]
                if not v.is_zero():
                    comps[labels] = v
    return M._new(comps)


def swap_inverse(M: Mould) -> Mould:
    """Inverse of swap: N(t; u) -> N(s; v) with v_j = u_1+..+u_{m-j+1}, s_1 = t_m, s_j = t_{m-j+2}^-1 t_{m-j+1}."""
    g = M.gamma
    g.require_group()
    comps = {}
    for m in range(M.max_length + 1):
        forms = tuple(tuple(1 if k < m - j else 0 for k in range(m)) for j in range(m))
        for labels in g.tuples(m):
            if m == 0:
                target = ()
            else:
                target = (labels[m - 1],) + tuple(
                    g.mul(g.inv(labels[m - j + 1]), labels[m - j]) for j in range(2, m + 1))
            if target in M.comps:
                v = M.at(target, forms, m) if m else M.comps[()]
                if not v.is_zero():
                    comps[labels] = v
    return M._new(comps)


def extend_by_gamma(M: Mould, gamma: Alphabet) -> Mould:
    """M_Γ(x; s) = M(x), copied across every label tuple."""
    if len(M.gamma) != 1:
        raise ValueError("extend_by_gamma expects a mould over a one-letter alphabet")
    s0 = M.gamma.symbols[0]
    comps = {}
    for m in range(M.max_length + 1):
        v = M.comps.get((s0,) * m)
        if v is not None:
            for labels in gamma.tuples(m):
                comps[labels] = v
    return Mould(gamma, M.max_length, comps, M.family)


def restrict_diagonal(M: Mould, symbol, target: Alphabet | None = None) -> Mould:
    """Mould over a one-letter alphabet reading M on constant label tuples (s, ..., s)."""
    target = target or Alphabet.trivial()
    t0 = target.symbols[0]
    comps = {}
    for m in range(M.max_length + 1):
        v = M.comps.get((symbol,) * m)
        if v is not None:
            comps[(t0,) * m] = v
    return Mould(target, M.max_length, comps, M.family)


# ---------------------------------------------------------------------------
# explicit moulds


def paj_value(m: int) -> RatFun:
    """1 / (x1 (x1+x2) ... (x1+...+xm))."""
    forms = [tuple(1 if j <= i else 0 for j in range(m)) for i in range(m)]
    return RatFun.inv_forms(forms, m)


def pic_value(m: int) -> RatFun:
    """1 / (x1 x2 ... xm)."""
    return RatFun.inv_forms([unit_form(i, m) for i in range(m)], m)


def paj(max_length: int, gamma: Alphabet | None = None) -> Mould:
    gamma = gamma or Alphabet.trivial()
    return Mould.from_function(gamma, max_length, lambda k: paj_value(len(k)))


def pic(max_length: int, gamma: Alphabet | None = None) -> Mould:
    gamma = gamma or Alphabet.trivial()
    return Mould.from_function(gamma, max_length, lambda k: pic_value(len(k)))


# ---------------------------------------------------------------------------
# polymoulds


def compositions(n: int, total: int):
    """All (r1..rn) with ri >= 0 and sum <= total."""
    if n == 0:
        yield ()
        return
    for r in range(total + 1):
        for rest in compositions(n - 1, total - r):
            yield (r,) + rest


class PolyMould:
    """Components indexed by one label tuple per block; variables run block by block."""

    def __init__(self, alphabets: Sequence[Alphabet], max_length: int, comps: dict | None = None,
                 family: Family = RAT, fix: bool = True):
        self.alphabets = tuple(alphabets)
        self.n = len(self.alphabets)
        self.max_length = max_length
        self.family = family
        self.comps: dict = {}
        self._cache: dict = {}
        for key, v in (comps or {}).items():
            key = tuple(tuple(b) for b in key)
            if len(key) != self.n:
                raise ValueError("one label tuple per block")
            m = sum(len(b) for b in key)
            if m > max_length:
                continue
            for b, g in zip(key, self.alphabets):
                if any(s not in g for s in b):
                    raise ValueError(f"label outside alphabet {g.name}")
            v = _as_ratfun(v, m)
            if fix:
                v = family.fix(v, m)
            if not v.is_zero():
                self.comps[key] = v

    @classmethod
    def unit(cls, alphabets, max_length: int, family: Family = RAT) -> "PolyMould":
        return cls(alphabets, max_length, {((),) * len(alphabets): 1}, family)

    @classmethod
    def from_function(cls, alphabets, max_length: int, fn: Callable, family: Family = RAT) -> "PolyMould":
        out = {}
        for key in cls.keys_for(alphabets, max_length):
            v = fn(key)
            if v is not None:
                out[key] = _as_ratfun(v, sum(map(len, key)))
        return cls(alphabets, max_length, out, family)

    @staticmethod
    def keys_for(alphabets, max_length: int):
        for shape in compositions(len(alphabets), max_length):
            for parts in iproduct(*[g.tuples(r) for g, r in zip(alphabets, shape)]):
                yield tuple(parts)

    def keys(self):
        return self.keys_for(self.alphabets, self.max_length)

    def _new(self, comps: dict, max_length: int | None = None, family: Family | None = None) -> "PolyMould":
        return PolyMould(self.alphabets, self.max_length if max_length is None else max_length,
                         comps, self.family if family is None else family)

    def __call__(self, *key) -> RatFun:
        if len(key) == 1 and self.n != 1:
            key = key[0]
        key = tuple(tuple(b) for b in key)
        m = sum(len(b) for b in key)
        if m > self.max_length:
            raise ValueError(f"length {m} beyond the bound {self.max_length}")
        v = self.comps.get(key)
        return v if v is not None else RatFun.zero(m)

    def at(self, key, forms: Sequence[Sequence[int]], nvars: int | None = None) -> RatFun:
        """Component for key with its variables (block by block) set to forms."""
        key = tuple(tuple(b) for b in key)
        forms = tuple(tuple(f) for f in forms)
        if nvars is None:
            nvars = len(forms[0]) if forms else 0
        ck = (key, forms, nvars)
        r = self._cache.get(ck)
        if r is None:
            v = self.comps.get(key)
            if v is None:
                r = RatFun.zero(nvars)
            elif not forms:
                r = RatFun.const(v.const_value(), nvars)
            else:
                r = evaluate_at(v, forms, nvars)
            self._cache[ck] = r
        return r

    @property
    def empty(self) -> Fraction:
        v = self.comps.get(((),) * self.n)
        return v.const_value() if v is not None else Fraction(0)

    def items(self):
        for key in self.keys():
            v = self.comps.get(key)
            if v is not None:
                yield key, v

    def _check(self, other):
        if not isinstance(other, PolyMould):
            raise TypeError("expected a PolyMould")
        if self.alphabets != other.alphabets:
            raise ValueError("alphabet mismatch")

    def __add__(self, other):
        self._check(other)
        L = min(self.max_length, other.max_length)
        comps = {k: v for k, v in self.comps.items() if sum(map(len, k)) <= L}
        for k, v in other.comps.items():
            if sum(map(len, k)) <= L:
                comps[k] = comps[k] + v if k in comps else v
        return self._new(comps, L, self.family.combine(other.family))

    def __neg__(self):
        return self._new({k: -v for k, v in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = rational(c)
        return self._new({k: v * c for k, v in self.comps.items()})

    def __mul__(self, other):
        if isinstance(other, PolyMould):
            return polymould_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def truncate(self, L: int):
        return self._new(self.comps, min(L, self.max_length))

    def with_family(self, family: Family):
        return PolyMould(self.alphabets, self.max_length, self.comps, family)

    def is_polynomial(self) -> bool:
        return all(v.is_poly() for v in self.comps.values())

    def __eq__(self, other):
        if not isinstance(other, PolyMould):
            return NotImplemented
        return (self.alphabets == other.alphabets and self.max_length == other.max_length
                and self.comps == other.comps)

    def __hash__(self):
        return hash((self.alphabets, self.max_length, frozenset(self.comps.items())))

    def first_difference(self, other: "PolyMould", L: int | None = None):
        if L is None:
            L = min(self.max_length, other.max_length)
        for key in self.keys_for(self.alphabets, L):
            a, b = self(key), other(key)
            if a != b:
                return key, a, b
        return None

    def __repr__(self):
        parts = [f"{[list(b) for b in k]}: {v}" for k, v in self.items()]
        names = ",".join(g.name for g in self.alphabets)
        return f"PolyMould[{names}, L={self.max_length}]{{" + "; ".join(parts) + "}"

    def to_json(self) -> dict:
        return {
            "family": str(self.family),
            "gammas": [g.name for g in self.alphabets],
            "max_length": self.max_length,
            "components": [
                {"length": sum(map(len, k)), "labels": [list(b) for b in k], "value": v.to_json()}
                for k, v in self.items()
            ],
        }

    @classmethod
    def from_json(cls, obj: dict, strict: bool = False) -> "PolyMould":
        alphabets = [Alphabet.from_name(g) for g in obj["gammas"]]
        family = Family.from_json(obj.get("family", "Rat"))
        comps = {}
        for c in obj.get("components", []):
            key = tuple(tuple(b) for b in c["labels"])
            comps[key] = RatFun.from_json(c["value"], sum(map(len, key)), strict)
        return cls(alphabets, int(obj["max_length"]), comps, family)


def as_polymould(M) -> PolyMould:
    if isinstance(M, PolyMould):
        return M
    return PolyMould((M.gamma,), M.max_length, {(k,): v for k, v in M.comps.items()}, M.family)


def polymould_mul(A: PolyMould, B: PolyMould) -> PolyMould:
    """Block-wise x-product: split every block into a prefix for A and a suffix for B."""
    A._check(B)
    L = min(A.max_length, B.max_length)
    comps = {}
    for key in A.keys_for(A.alphabets, L):
        lens = [len(b) for b in key]
        m = sum(lens)
        offs = [sum(lens[:k]) for k in range(A.n)]
        acc = None
        for cut in iproduct(*[range(r + 1) for r in lens]):
            ka = tuple(b[:c] for b, c in zip(key, cut))
            a = A.comps.get(ka)
            if a is None:
                continue
            kb = tuple(b[c:] for b, c in zip(key, cut))
            b = B.comps.get(kb)
            if b is None:
                continue
            pa = [o + j for o, c in zip(offs, cut) for j in range(c)]
            pb = [o + j for o, c, r in zip(offs, cut, lens) for j in range(c, r)]
            t = a.rename(pa, m) * b.rename(pb, m)
            acc = t if acc is None else acc + t
        if acc is not None and not acc.is_zero():
            comps[key] = acc
    return PolyMould(A.alphabets, L, comps, A.family.combine(B.family))


def polymould_inv_mul(B: PolyMould) -> PolyMould:
    """x-inverse of a polymould, length by length."""
    b0 = B.empty
    if not b0:
        raise ZeroDivisionError("B(∅) = 0 has no inverse")
    inv0 = 1 / b0
    comps = {((),) * B.n: RatFun.const(inv0, 0)}
    for key in B.keys():
        lens = [len(b) for b in key]
        m = sum(lens)
        if m == 0:
            continue
        offs = [sum(lens[:k]) for k in range(B.n)]
        acc = None
        for cut in iproduct(*[range(r + 1) for r in lens]):
            if list(cut) == lens:
                continue
            a = comps.get(tuple(b[:c] for b, c in zip(key, cut)))
            if a is None:
                continue
            b = B.comps.get(tuple(b[c:] for b, c in zip(key, cut)))
            if b is None:
                continue
            pa = [o + j for o, c in zip(offs, cut) for j in range(c)]
            pb = [o + j for o, c, r in zip(offs, cut, lens) for j in range(c, r)]
            t = a.rename(pa, m) * b.rename(pb, m)
            acc = t if acc is None else acc + t
        if acc is not None:
            acc = B.family.fix(acc * (-inv0), m)
            if not acc.is_zero():
                comps[key] = acc
    return B._new(comps)


def tensor(M, N) -> PolyMould:
    """(M ⊗ N)(w; w') = M(w) N(w') on disjoint variable blocks."""
    A, B = as_polymould(M), as_polymould(N)
    alph = A.alphabets + B.alphabets
    L = min(A.max_length, B.max_length)
    comps = {}
    for ka, a in A.comps.items():
        ma = sum(map(len, ka))
        for kb, b in B.comps.items():
            mb = sum(map(len, kb))
            if ma + mb > L:
                continue
            comps[ka + kb] = a.extend(ma + mb) * b.extend(ma + mb, ma)
    return PolyMould(alph, L, comps, A.family.combine(B.family))


def dimould(gamma1: Alphabet, gamma2: Alphabet, max_length: int, comps: dict | None = None,
            family: Family = RAT) -> PolyMould:
    return PolyMould((gamma1, gamma2), max_length, comps, family)


P4_ALPHABETS = (Alphabet.block(1), Alphabet.block(2))


def p4(max_length: int, comps: dict | None = None, family: Family = RAT) -> PolyMould:
    """Element of P4: a polymould over the alphabets [1], [2]."""
    return PolyMould(P4_ALPHABETS, max_length, comps, family)


# ---------------------------------------------------------------------------
# Sh, Sh_* and symmetry


def _unit_word(labels: Sequence, start: int, nvars: int) -> tuple:
    return tuple(Letter(unit_form(start + i, nvars), s) for i, s in enumerate(labels))


def _word_value(M: Mould, w: tuple, nvars: int) -> RatFun:
    return M.at(tuple(l.sigma for l in w), tuple(l.u for l in w), nvars)


def shuffle_pairing(M: Mould, left: Sequence, right: Sequence) -> RatFun:
    """Σ_α Sh(left, right; α) M(α) with left on x1..xp and right on x_{p+1}..x_{p+q}."""
    p, q = len(left), len(right)
    d = p + q
    acc = RatFun.zero(d)
    for w, c in shuffle_raw(_unit_word(left, 0, d), _unit_word(right, p, d)).items():
        v = _word_value(M, w, d)
        if not v.is_zero():
            acc = acc + v * c
    return acc


def stuffle_pairing(M: Mould, left: Sequence, right: Sequence) -> RatFun:
    """Σ_α Sh_*(left, right; α) M(α) with stuffle coefficients in Q(x)."""
    p, q = len(left), len(right)
    d = p + q
    acc = RatFun.zero(d)
    for w, c in stuffle_raw(_unit_word(left, 0, d), _unit_word(right, p, d), M.gamma, d).items():
        v = _word_value(M, w, d)
        if not v.is_zero():
            acc = acc + v * c
    return acc


def sh_map(M: Mould) -> PolyMould:
    comps = {}
    for key in PolyMould.keys_for((M.gamma, M.gamma), M.max_length):
        v = shuffle_pairing(M, key[0], key[1])
        if not v.is_zero():
            comps[key] = v
    return PolyMould((M.gamma, M.gamma), M.max_length, comps, M.family)


def sh_star_map(M: Mould) -> PolyMould:
    M.gamma.require_group()
    comps = {}
    for key in PolyMould.keys_for((M.gamma, M.gamma), M.max_length):
        v = stuffle_pairing(M, key[0], key[1])
        if not v.is_zero():
            comps[key] = v
    return PolyMould((M.gamma, M.gamma), M.max_length, comps, RAT)


@dataclass
class SymmetryReport:
    kind: str
    ok: bool
    bound: int
    checked: int
    witness: dict | None = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        w = None
        if self.witness is not None:
            w = {k: (str(v) if isinstance(v, RatFun) else v) for k, v in self.witness.items()}
        return {"kind": self.kind, "ok": self.ok, "bound": self.bound, "checked": self.checked, "witness": w}


SYMMETRIES = ("alternal", "symmetral", "alternil", "symmetril")


def symmetry_check(kind: str, M: Mould, up_to: int | None = None) -> SymmetryReport:
    """Check the shuffle (al/as) or stuffle (il/is) relations for all p, q >= 1 with p + q <= up_to."""
    if kind not in SYMMETRIES:
        raise ValueError(f"unknown symmetry {kind!r}")
    bound = M.max_length if up_to is None else min(up_to, M.max_length)
    group_like = kind in ("symmetral", "symmetril")
    stuffled = kind in ("alternil", "symmetril")
    if stuffled:
        M.gamma.require_group()
    want_empty = 1 if group_like else 0
    if M.empty != want_empty:
        return SymmetryReport(kind, False, bound, 0, {"labels": [], "reason": f"M(∅) = {M.empty}, expected {want_empty}"})
    pairing = stuffle_pairing if stuffled else shuffle_pairing
    checked = 0
    for total in range(2, bound + 1):
        for p in range(1, total):
            q = total - p
            for left in M.gamma.tuples(p):
                for right in M.gamma.tuples(q):
                    lhs = pairing(M, left, right)
                    if group_like:
                        rhs = M(left).extend(total) * M(right).extend(total, p)
                    else:
                        rhs = RatFun.zero(total)
                    if M.family.kind == "ser":
                        lhs, rhs = M.family.fix(lhs, total), M.family.fix(rhs, total)
                    checked += 1
                    if lhs != rhs:
                        return SymmetryReport(kind, False, bound, checked,
                                              {"left": list(left), "right": list(right), "lhs": lhs, "rhs": rhs})
    return SymmetryReport(kind, True, bound, checked)


def is_symmetral(M: Mould, up_to: int | None = None) -> bool:
    return symmetry_check("symmetral", M, up_to).ok


def is_alternal(M: Mould, up_to: int | None = None) -> bool:
    return symmetry_check("alternal", M, up_to).ok


def is_symmetril(M: Mould, up_to: int | None = None) -> bool:
    return symmetry_check("symmetril", M, up_to).ok


def is_alternil(M: Mould, up_to: int | None = None) -> bool:
    return symmetry_check("alternil", M, up_to).ok


# ---------------------------------------------------------------------------
# random moulds for experiments and tests


def random_ratfun(nvars: int, rng: random.Random, max_degree: int = 2, terms: int = 3,
                  coeff: int = 3, denominators: int = 0) -> RatFun:
    num = {}
    for _ in range(terms):
        deg = rng.randint(0, max_degree)
        e = [0] * nvars
        for _ in range(deg):
            if nvars:
                e[rng.randrange(nvars)] += 1
        c = rng.randint(-coeff, coeff)
        if c:
            num[tuple(e)] = num.get(tuple(e), 0) + c
    den = []
    for _ in range(denominators if nvars else 0):
        f = [rng.randint(-1, 1) for _ in range(nvars)]
        if any(f):
            den.append((tuple(f), 1))
    return RatFun(nvars, num, den)


def random_mould(gamma: Alphabet, max_length: int, rng: random.Random, empty=None,
                 family: Family = RAT, max_degree: int = 2, terms: int = 3,
                 denominators: int = 0, density: float = 1.0) -> Mould:
    """Random mould; empty fixes M(∅) (0 for ARI, 1 for GARI)."""
    comps = {}
    for m in range(max_length + 1):
        for labels in gamma.tuples(m):
            if m == 0:
                comps[()] = RatFun.const(rng.randint(-3, 3) if empty is None else empty, 0)
            elif rng.random() < density:
                comps[labels] = random_ratfun(m, rng, max_degree, terms, 3, denominators)
    return Mould(gamma, max_length, comps, family)


def random_polymould(alphabets, max_length: int, rng: random.Random, empty=None,
                     family: Family = RAT, max_degree: int = 2, terms: int = 3,
                     denominators: int = 0) -> PolyMould:
    comps = {}
    for key in PolyMould.keys_for(alphabets, max_length):
        m = sum(map(len, key))
        if m == 0:
            comps[key] = RatFun.const(rng.randint(-3, 3) if empty is None else empty, 0)
        else:
            comps[key] = random_ratfun(m, rng, max_degree, terms, 3, denominators)
    return PolyMould(alphabets, max_length, comps, family)
