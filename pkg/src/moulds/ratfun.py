"""Exact coefficient arithmetic.

Three layers live here: rationals (``fractions.Fraction``), sparse
multivariate polynomials over Q, and rational functions whose denominators
are products of primitive integer linear forms.  Every denominator produced
by the mould operations in this package has that shape, so cancellation is
a sequence of exact divisions by linear forms rather than a general GCD.

Variables are x1..xd where d is the arity of the value.  Exponent vectors and
linear forms are plain tuples of length d.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from operator import add
from typing import Iterable, Sequence

Q = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


class DivisibilityError(ArithmeticError):
    """A quotient that must be polynomial was not."""


class ArityError(ValueError):
    pass


def rational(x) -> Fraction:
    """Coerce int, Fraction or a "p/q" string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as a rational")


def rational_str(q: Fraction) -> str:
    q = rational(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str, strict: bool = False) -> Fraction:
    """Parse "p/q"; with strict=True an unreduced or signed-denominator form is rejected."""
    s = s.strip()
    if strict:
        if "/" in s:
            p, q = s.split("/")
            p, q = int(p), int(q)
            if q <= 0 or gcd(p, q) != 1:
                raise ValueError(f"rational {s!r} is not in lowest terms")
        else:
            int(s)
    return Fraction(s)


# ---------------------------------------------------------------------------
# linear forms


def form_normalize(v: Sequence[int]) -> tuple[int, tuple]:
    """Split an integer vector as scale * primitive, primitive sign-normalized.

    The first nonzero entry of the primitive part is positive.  Raises on the
    zero vector.
    """
    g = 0
    lead = 0
    for a in v:
        if a:
            g = gcd(g, a)
            if not lead:
                lead = a
    if not g:
        raise ZeroDivisionError("zero linear form")
    if lead < 0:
        g = -g
    return g, tuple(a // g for a in v)


def is_primitive(v: Sequence[int]) -> bool:
    try:
        s, p = form_normalize(v)
    except ZeroDivisionError:
        return False
    return s == 1


def unit_form(i: int, d: int) -> tuple:
    """x_{i+1} as a length-d vector (0-based index i)."""
    v = [0] * d
    v[i] = 1
    return tuple(v)


def form_sum(forms: Iterable[Sequence[int]], d: int) -> tuple:
    acc = [0] * d
    for f in forms:
        for i, a in enumerate(f):
            acc[i] += a
    return tuple(acc)


def form_neg(f: Sequence[int]) -> tuple:
    return tuple(-a for a in f)


def form_compose(f: Sequence[int], forms: Sequence[Sequence[int]], e: int) -> tuple:
    """The form sum_i f_i * forms[i] over e variables."""
    acc = [0] * e
    for a, g in zip(f, forms):
        if a:
            for j, b in enumerate(g):
                if b:
                    acc[j] += a * b
    return tuple(acc)


def rank(vectors: Sequence[Sequence[int]]) -> int:
    rows = [[Fraction(a) for a in v] for v in vectors]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                t = rows[i][c] / rows[r][c]
                rows[i] = [a - t * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def independent(forms: Sequence[Sequence[int]]) -> bool:
    return not forms or rank(forms) == len(forms)


# ---------------------------------------------------------------------------
# raw polynomial kernels on dicts {exponent tuple: Fraction}


def _padd(a: dict, b: dict, cb=ONE) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, ZERO) + cb * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _pscale(a: dict, c) -> dict:
    if not c:
        return {}
    return {e: c * v for e, v in a.items()}


def _integral(a: dict):
    """(s, {e: int}) with a = {e: n / s}; clearing denominators keeps Fraction out of loops."""
    s = 1
    for c in a.values():
        d = c.denominator
        if d != 1:
            s = s * d // gcd(s, d)
    if s == 1:
        return 1, {e: c.numerator for e, c in a.items()}
    return s, {e: c.numerator * (s // c.denominator) for e, c in a.items()}


def _pmul(a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    sa, ia = _integral(a)
    sb, ib = _integral(b)
    acc: dict = {}
    get = acc.get
    for ea, ca in ia.items():
        for eb, cb in ib.items():
            e = tuple(map(add, ea, eb))
            acc[e] = get(e, 0) + ca * cb
    s = sa * sb
    if s == 1:
        return {e: Fraction(v) for e, v in acc.items() if v}
    return {e: Fraction(v, s) for e, v in acc.items() if v}


def _pform(f: Sequence[int]) -> dict:
    d = len(f)
    out = {}
    for i, a in enumerate(f):
        if a:
            out[unit_form(i, d)] = Fraction(a)
    return out


_POW_CACHE: dict = {}


def _pform_pow(f: tuple, k: int) -> dict:
    key = (f, k)
    p = _POW_CACHE.get(key)
    if p is None:
        if k == 0:
            p = {(0,) * len(f): ONE}
        elif k == 1:
            p = _pform(f)
        else:
            p = _pmul(_pform_pow(f, k - 1), _pform(f))
        if len(_POW_CACHE) > 200000:
            _POW_CACHE.clear()
        _POW_CACHE[key] = p
    return p


def _psubst(a: dict, forms: Sequence[tuple], e: int) -> dict:
    out: dict = {}
    for ex, c in a.items():
        term = {(0,) * e: c}
        for i, k in enumerate(ex):
            if k:
                term = _pmul(term, _pform_pow(forms[i], k))
        for m, v in term.items():
            w = out.get(m, ZERO) + v
            if w:
                out[m] = w
            else:
                del out[m]
    return out


def _pdiv_form(a: dict, f: tuple):
    """Exact quotient a / f for a linear form f, or None when f does not divide a.

    Synthetic division along the last variable occurring in f.
    """
    if not a:
        return {}
    j = max(i for i, c in enumerate(f) if c)
    lead = Fraction(f[j])
    rest = {unit_form(i, len(f)): Fraction(c) for i, c in enumerate(f) if c and i != j}
    # split a by power of x_j
    slices: dict = {}
    for ex, c in a.items():
        k = ex[j]
        base = ex[:j] + (0,) + ex[j + 1:]
        slices.setdefault(k, {})[base] = c
    top = max(slices)
    if top == 0:
        return None
    quot: dict = {}
    carry: dict = {}  # r * q_k from the previous step
    for k in range(top, 0, -1):
        p_k = slices.get(k, {})
        num = _padd(p_k, carry, -ONE) if carry else p_k
        q = _pscale(num, 1 / lead)
        for ex, c in q.items():
            quot[ex[:j] + (k - 1,) + ex[j + 1:]] = c
        carry = _pmul(rest, q) if rest and q else {}
    rem = _padd(slices.get(0, {}), carry, -ONE) if carry else slices.get(0, {})
    if rem:
        return None
    return quot


def _pdegree(a: dict) -> int:
    return max((sum(e) for e in a), default=-1)


def _ptruncate(a: dict, maxdeg: int) -> dict:
    return {e: c for e, c in a.items() if sum(e) <= maxdeg}


def _peval(a: dict, point: Sequence) -> Fraction:
    total = ZERO
    for e, c in a.items():
        t = c
        for x, k in zip(point, e):
            if k:
                t *= x ** k
        total += t
    return total


# ---------------------------------------------------------------------------


class Poly:
    """Sparse polynomial over Q in variables x1..x_nvars."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = {e: Fraction(c) for e, c in (terms or {}).items() if c}
        for e in self.terms:
            if len(e) != nvars:
                raise ArityError(f"exponent {e} has wrong length for {nvars} variables")
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c, nvars: int) -> "Poly":
        c = rational(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        """x_{i+1} (0-based index)."""
        return cls._raw(nvars, {unit_form(i, nvars): ONE})

    @classmethod
    def from_form(cls, f: Sequence[int]) -> "Poly":
        return cls._raw(len(f), _pform(tuple(f)))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return _pdegree(self.terms)

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ArityError(f"arity mismatch {self.nvars} != {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.nvars)
        self._check(other)
        return Poly._raw(self.nvars, _padd(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, _pscale(self.terms, -ONE))

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.nvars)
        self._check(other)
        return Poly._raw(self.nvars, _padd(self.terms, other.terms, -ONE))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly._raw(self.nvars, _pscale(self.terms, rational(other)))
        self._check(other)
        return Poly._raw(self.nvars, _pmul(self.terms, other.terms))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.nvars)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self) -> list:
        """Terms in decreasing lexicographic order with x1 < x2 < ... ."""
        return sorted(self.terms.items(), key=lambda t: t[0][::-1], reverse=True)

    def __repr__(self):
        return f"Poly({_poly_str(self.terms)})"


def _mono_str(e) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i + 1}")
        elif k:
            parts.append(f"x{i + 1}^{k}")
    return "*".join(parts)


def _poly_str(terms: dict) -> str:
    if not terms:
        return "0"
    out = []
    for e, c in sorted(terms.items(), key=lambda t: t[0][::-1], reverse=True):
        m = _mono_str(e)
        if not m:
            out.append(str(c))
        elif c == 1:
            out.append(m)
        elif c == -1:
            out.append("-" + m)
        else:
            out.append(f"{c}*{m}")
    return " + ".join(out).replace("+ -", "- ")


def _form_str(f) -> str:
    return _poly_str(_pform(tuple(f)))


# ---------------------------------------------------------------------------


def _cancel(num: dict, den: dict, forms=None) -> tuple[dict, dict]:
    """Divide num by the forms of den (or only the listed ones) while exact."""
    if not num:
        return {}, {}
    for f in list(den) if forms is None else forms:
        m = den.get(f, 0)
        while m:
            q = _pdiv_form(num, f)
            if q is None:
                break
            num = q
            m -= 1
        if m:
            den[f] = m
        else:
            den.pop(f, None)
    return num, den


class RatFun:
    """num / prod(form^mult) with num a sparse polynomial over Q.

    Canonical form: every denominator form is primitive with positive first
    nonzero entry, no denominator form divides num, and all scalar content
    sits in num.  Two equal rational functions have identical fields.
    """

    __slots__ = ("nvars", "num", "den", "_hash")

    def __init__(self, nvars: int, num=None, den: Iterable = ()):
        if isinstance(num, Poly):
            if num.nvars != nvars:
                raise ArityError("numerator arity mismatch")
            num = num.terms
        num = {tuple(e): rational(c) for e, c in (num or {}).items() if c}
        for e in num:
            if len(e) != nvars:
                raise ArityError(f"exponent {e} has wrong length for {nvars} variables")
        dd: dict = {}
        for f, m in den:
            f = tuple(f)
            if len(f) != nvars:
                raise ArityError(f"form {f} has wrong length for {nvars} variables")
            s, p = form_normalize(f)
            if m < 0:
                raise ValueError("negative multiplicity")
            if s != 1:
                num = _pscale(num, Fraction(1, s ** m))
            dd[p] = dd.get(p, 0) + m
        num, dd = _cancel(num, dd)
        self.nvars = nvars
        self.num = num
        self.den = tuple(sorted(dd.items())) if num else ()
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, num: dict, den: dict) -> "RatFun":
        r = object.__new__(cls)
        r.nvars = nvars
        r.num = num
        r.den = tuple(sorted((f, m) for f, m in den.items() if m)) if num else ()
        r._hash = None
        return r

    # constructors -----------------------------------------------------------
    @classmethod
    def const(cls, c, nvars: int) -> "RatFun":
        c = rational(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {}, {})

    @classmethod
    def zero(cls, nvars: int) -> "RatFun":
        return cls._raw(nvars, {}, {})

    @classmethod
    def one(cls, nvars: int) -> "RatFun":
        return cls.const(1, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "RatFun":
        return cls._raw(nvars, {unit_form(i, nvars): ONE}, {})

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFun":
        return cls._raw(p.nvars, dict(p.terms), {})

    @classmethod
    def form(cls, f: Sequence[int]) -> "RatFun":
        return cls._raw(len(f), _pform(tuple(f)), {})

    @classmethod
    def inv_forms(cls, forms: Iterable[Sequence[int]], nvars: int, c=1) -> "RatFun":
        """c / prod(forms)."""
        return cls(nvars, {(0,) * nvars: rational(c)}, [(tuple(f), 1) for f in forms])

    # predicates ----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_poly(self) -> bool:
        return not self.den

    def is_const(self) -> bool:
        return not self.den and all(not any(e) for e in self.num)

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("not a constant")
        return self.num.get((0,) * self.nvars, ZERO)

    def numerator(self) -> Poly:
        return Poly._raw(self.nvars, dict(self.num))

    def degree(self) -> int:
        """Total degree (numerator degree minus denominator degree)."""
        if not self.num:
            return -1
        return _pdegree(self.num) - sum(m for _, m in self.den)

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ArityError(f"arity mismatch {self.nvars} != {other.nvars}")

    def _coerce(self, other) -> "RatFun":
        if isinstance(other, RatFun):
            self._check(other)
            return other
        if isinstance(other, Poly):
            r = RatFun.from_poly(other)
            self._check(r)
            return r
        return RatFun.const(other, self.nvars)

    # arithmetic ------------------------------------------------------------------
    def __add__(self, other) -> "RatFun":
        other = self._coerce(other)
        return _add(self, other, ONE)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFun":
        other = self._coerce(other)
        return _add(self, other, -ONE)

    def __rsub__(self, other) -> "RatFun":
        return self._coerce(other) - self

    def __neg__(self) -> "RatFun":
        return RatFun._raw(self.nvars, _pscale(self.num, -ONE), dict(self.den))

    def __mul__(self, other) -> "RatFun":
        if isinstance(other, (int, Fraction)):
            c = rational(other)
            if not c:
                return RatFun.zero(self.nvars)
            return RatFun._raw(self.nvars, _pscale(self.num, c), dict(self.den))
        other = self._coerce(other)
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFun":
        if isinstance(other, (int, Fraction)):
            c = rational(other)
            return RatFun._raw(self.nvars, _pscale(self.num, 1 / c), dict(self.den))
        other = self._coerce(other)
        return self * other.inverse()

    def __pow__(self, k: int) -> "RatFun":
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFun.one(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def inverse(self) -> "RatFun":
        """Inverse of a value whose numerator is a constant or a single linear form."""
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        deg = _pdegree(self.num)
        if deg == 0:
            c = self.num[(0,) * self.nvars]
            forms = {}
        elif deg == 1 and all(sum(e) == 1 for e in self.num):
            f = [0] * self.nvars
            for e, c0 in self.num.items():
                f[e.index(1)] = c0
            den_l = 1
            for c0 in f:
                den_l = den_l * Fraction(c0).denominator // gcd(den_l, Fraction(c0).denominator)
            iv = [int(c0 * den_l) for c0 in f]
            s, p = form_normalize(iv)
            c = Fraction(s, den_l)
            forms = {p: 1}
        else:
            raise ValueError("only constants and linear forms are inverted")
        num = {(0,) * self.nvars: 1 / c}
        for f, m in self.den:
            num = _pmul(num, _ppow(_pform(f), m))
        return RatFun(self.nvars, num, list(forms.items()))

    def div_form(self, f: Sequence[int]) -> "RatFun":
        """self / f for a linear form f."""
        f = tuple(f)
        if len(f) != self.nvars:
            raise ArityError("form arity mismatch")
        s, p = form_normalize(f)
        num = _pscale(self.num, Fraction(1, s))
        den = dict(self.den)
        q = _pdiv_form(num, p) if den.get(p, 0) == 0 else None
        if q is not None:
            return RatFun._raw(self.nvars, q, den)
        den[p] = den.get(p, 0) + 1
        return RatFun._raw(self.nvars, num, den)

    def truncate(self, maxdeg: int) -> "RatFun":
        """Drop monomials of total degree > maxdeg (polynomial values only)."""
        if self.den:
            raise DivisibilityError("divisibility violated: truncating a non-polynomial value")
        if _pdegree(self.num) <= maxdeg:
            return self
        return RatFun._raw(self.nvars, _ptruncate(self.num, maxdeg), {})

    def homogeneous_part(self, deg: int) -> "RatFun":
        if self.den:
            raise ValueError("homogeneous part of a non-polynomial value")
        return RatFun._raw(self.nvars, {e: c for e, c in self.num.items() if sum(e) == deg}, {})

    def substitute(self, forms: Sequence[Sequence[int]], check: bool = False) -> "RatFun":
        return substitute_linear(self, forms, check=check)

    def extend(self, nvars: int, offset: int = 0) -> "RatFun":
        """View as a function of nvars variables with x_i renamed to x_{i+offset}."""
        if nvars < self.nvars + offset:
            raise ArityError("cannot shrink arity")
        pad_l = (0,) * offset
        pad_r = (0,) * (nvars - self.nvars - offset)
        num = {pad_l + e + pad_r: c for e, c in self.num.items()}
        den = {pad_l + f + pad_r: m for f, m in self.den}
        return RatFun._raw(nvars, num, den)

    def rename(self, positions: Sequence[int], nvars: int) -> "RatFun":
        """Substitute x_j -> x_{positions[j]} (0-based, injective) into nvars variables."""
        if len(positions) != self.nvars:
            raise ArityError("one target position per variable")
        zero = [0] * nvars

        def move(e):
            out = list(zero)
            for j, k in enumerate(e):
                if k:
                    out[positions[j]] = k
            return tuple(out)

        num = {move(e): c for e, c in self.num.items()}
        if not self.den:
            return RatFun._raw(nvars, num, {})
        den = {}
        flip = 0
        for f, m in self.den:
            g = move(f)
            if next(a for a in g if a) < 0:
                g = tuple(-a for a in g)
                flip += m
            den[g] = m
        if flip % 2:
            num = {e: -c for e, c in num.items()}
        return RatFun._raw(nvars, num, den)

    def negate_vars(self) -> "RatFun":
        """f(-x_1, ..., -x_d)."""
        num = {e: (-c if sum(e) % 2 else c) for e, c in self.num.items()}
        if sum(m for _, m in self.den) % 2:
            num = {e: -c for e, c in num.items()}
        return RatFun._raw(self.nvars, num, dict(self.den))

    def evaluate(self, point: Sequence) -> Fraction:
        point = [rational(x) for x in point]
        d = ONE
        for f, m in self.den:
            v = sum(a * x for a, x in zip(f, point))
            if not v:
                raise ZeroDivisionError("pole")
            d *= Fraction(v) ** m
        return _peval(self.num, point) / d

    # comparison -----------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if self.den:
                return False
            c = rational(other)
            return self.num == ({(0,) * self.nvars: c} if c else {})
        if isinstance(other, Poly):
            other = RatFun.from_poly(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.nvars == other.nvars and self.den == other.den and self.num == other.num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.den, frozenset(self.num.items())))
        return self._hash

    def __repr__(self):
        s = _poly_str(self.num)
        if self.den:
            d = "*".join(
                f"({_form_str(f)})" + (f"^{m}" if m > 1 else "") for f, m in self.den
            )
            return f"({s})/({d})"
        return s

    # serialization ----------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "num": [[rational_str(c), list(e)] for e, c in sorted(self.num.items(), key=lambda t: t[0][::-1], reverse=True)],
            "den": [[list(f), m] for f, m in self.den],
        }

    @classmethod
    def from_json(cls, obj: dict, nvars: int | None = None, strict: bool = False) -> "RatFun":
        terms = {}
        for c, e in obj.get("num", []):
            e = tuple(int(k) for k in e)
            if nvars is None:
                nvars = len(e)
            terms[e] = terms.get(e, ZERO) + parse_rational(c, strict)
        den = []
        for f, m in obj.get("den", []):
            f = tuple(int(a) for a in f)
            if nvars is None:
                nvars = len(f)
            if strict and not is_primitive(f):
                raise ValueError(f"denominator form {f} is not primitive and sign-normalized")
            den.append((f, int(m)))
        if nvars is None:
            nvars = 0
        return cls(nvars, terms, den)


def _ppow(a: dict, k: int) -> dict:
    out = None
    for _ in range(k):
        out = a if out is None else _pmul(out, a)
    if out is None:
        d = len(next(iter(a)))
        return {(0,) * d: ONE}
    return out


def _add(a: RatFun, b: RatFun, cb: Fraction) -> RatFun:
    if not b.num:
        return a
    if not a.num:
        return b if cb == 1 else -b
    if a.den == b.den:
        num = _padd(a.num, b.num, cb)
        den = dict(a.den)
        if not num:
            return RatFun._raw(a.nvars, {}, {})
        num, den = _cancel(num, den)
        return RatFun._raw(a.nvars, num, den)
    da = dict(a.den)
    db = dict(b.den)
    lcm = dict(da)
    for f, m in db.items():
        if m > lcm.get(f, 0):
            lcm[f] = m
    na = a.num
    for f, m in lcm.items():
        k = m - da.get(f, 0)
        if k:
            na = _pmul(na, _ppow(_pform(f), k))
    nb = b.num
    for f, m in lcm.items():
        k = m - db.get(f, 0)
        if k:
            nb = _pmul(nb, _ppow(_pform(f), k))
    num = _padd(na, nb, cb)
    if not num:
        return RatFun._raw(a.nvars, {}, {})
    common = [f for f, m in da.items() if db.get(f, 0) == m]
    num, lcm = _cancel(num, lcm, common)
    return RatFun._raw(a.nvars, num, lcm)


def _mul(a: RatFun, b: RatFun) -> RatFun:
    if not a.num or not b.num:
        return RatFun._raw(a.nvars, {}, {})
    na, nb = a.num, b.num
    da, db = dict(a.den), dict(b.den)
    # a form of da can only divide nb, and one of db only na
    if da and nb:
        nb, da = _cancel(nb, da)
    if db and na:
        na, db = _cancel(na, db)
    num = _pmul(na, nb)
    den = da
    for f, m in db.items():
        den[f] = den.get(f, 0) + m
    return RatFun._raw(a.nvars, num, den)


def substitute_linear(f: RatFun, forms: Sequence[Sequence[int]], check: bool = True) -> RatFun:
    """Replace x_i by forms[i]; forms are vectors over a common set of e variables."""
    forms = [tuple(g) for g in forms]
    if len(forms) != f.nvars:
        raise ArityError(f"need {f.nvars} forms, got {len(forms)}")
    e = len(forms[0]) if forms else 0
    if any(len(g) != e for g in forms):
        raise ArityError("forms of unequal length")
    if check and not independent(forms):
        raise ValueError("substitution forms are linearly dependent")
    if not f.num:
        return RatFun._raw(e, {}, {})
    num = _psubst(f.num, forms, e) if f.nvars else {(0,) * e: f.num[()]}
    if not f.den:
        return RatFun._raw(e, num, {})
    den: dict = {}
    scale = ONE
    for g, m in f.den:
        h = form_compose(g, forms, e)
        if not any(h):
            raise ZeroDivisionError("denominator factor vanishes after substitution")
        s, p = form_normalize(h)
        if s != 1:
            scale /= Fraction(s) ** m
        den[p] = den.get(p, 0) + m
    if scale != 1:
        num = _pscale(num, scale)
    num, den = _cancel(num, den)
    return RatFun._raw(e, num, den)


def divided_difference(m_at_ui: RatFun, m_at_ui1: RatFun, form: Sequence[int], family: "Family" = None) -> RatFun:
    """(m_at_ui - m_at_ui1) / form.

    Outside the rational family the quotient has to be polynomial; otherwise
    DivisibilityError("divisibility violated") is raised.
    """
    diff = m_at_ui - m_at_ui1
    q = diff.div_form(form)
    if family is not None and family.kind != "rat" and not q.is_poly():
        raise DivisibilityError("divisibility violated")
    return q


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Family:
    """Coefficient family: polynomial, rational (linear-form denominators) or
    truncated series.  For truncated series `degree` is the weight bound N:
    a component of length m keeps monomials of degree <= N - m."""

    kind: str
    degree: int | None = None

    def __post_init__(self):
        if self.kind not in ("pol", "rat", "ser"):
            raise ValueError(f"unknown family {self.kind!r}")
        if self.kind == "ser" and (self.degree is None or self.degree < 0):
            raise ValueError("truncated family needs a degree bound N >= 0")

    def __str__(self):
        return f"TruncSer({self.degree})" if self.kind == "ser" else self.kind.capitalize()

    def to_json(self):
        return str(self)

    @staticmethod
    def from_json(s: str) -> "Family":
        s = s.strip()
        if s.lower() == "pol":
            return POL
        if s.lower() == "rat":
            return RAT
        if s.startswith("TruncSer(") and s.endswith(")"):
            return TruncSer(int(s[9:-1]))
        raise ValueError(f"unknown family {s!r}")

    def fix(self, value: RatFun, length: int) -> RatFun:
        """Bring a freshly computed component of the given length into the family."""
        if self.kind == "rat":
            return value
        if value.den:
            raise DivisibilityError("divisibility violated")
        if self.kind == "ser":
            return value.truncate(self.degree - length) if length <= self.degree else RatFun.zero(value.nvars)
        return value

    def combine(self, other: "Family") -> "Family":
        """Family of a result built from operands in self and other."""
        if self.kind == "ser" or other.kind == "ser":
            ds = [f.degree for f in (self, other) if f.kind == "ser"]
            if "rat" in (self.kind, other.kind):
                raise ValueError("cannot mix truncated series with rational functions")
            return TruncSer(min(ds))
        if "rat" in (self.kind, other.kind):
            return RAT
        return POL


POL = Family("pol")
RAT = Family("rat")


def TruncSer(n: int) -> Family:
    return Family("ser", n)
