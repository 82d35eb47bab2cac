"""Exact arithmetic in the rational function field Q(q, a).

Elements are stored as canonical fractions ``num/den`` of integer polynomials
in two commuting indeterminates.  Canonical means: ``gcd(num, den) = 1`` over
Z[q, a], the leading coefficient of ``den`` (graded lex, q > a) is positive,
and zero is ``0/1``.  Canonical forms are unique, so equality is structural.
"""

from __future__ import annotations

import re
from functools import lru_cache
from math import gcd as igcd
from typing import Dict, Iterable, Iterator, List, Tuple, Union

Exp = Tuple[int, int]  # (q-degree, a-degree)


class DivisionByZero(ZeroDivisionError):
    """Raised when dividing by the zero rational function."""


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


# ---------------------------------------------------------------------------
# dense univariate helpers over Z (tuples, index = degree, no trailing zeros)
# ---------------------------------------------------------------------------

def _utrim(p: List[int]) -> Tuple[int, ...]:
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _uadd(f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] += c
    return _utrim(out)


def _usub(f, g):
    out = list(f) + [0] * max(0, len(g) - len(f))
    for i, c in enumerate(g):
        out[i] -= c
    return _utrim(out)


def _umul(f, g):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, c in enumerate(f):
        if c:
            for j, d in enumerate(g):
                out[i + j] += c * d
    return tuple(out)


def _ucontent(f) -> int:
    c = 0
    for x in f:
        c = igcd(c, x)
        if c == 1:
            break
    return c


def _udiv_int(f, c):
    return tuple(x // c for x in f)


def _udivexact(f, g):
    """Exact quotient f/g in Z[q]; raises ArithmeticError if inexact."""
    if not g:
        raise DivisionByZero("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    lg = g[-1]
    if len(r) - 1 < dg:
        if any(r):
            raise ArithmeticError("inexact division")
        return ()
    quot = [0] * (len(r) - dg)
    for k in range(len(r) - 1 - dg, -1, -1):
        c = r[k + dg]
        if c == 0:
            continue
        qk, rem = divmod(c, lg)
        if rem:
            raise ArithmeticError("inexact division")
        quot[k] = qk
        for j, d in enumerate(g):
            r[k + j] -= qk * d
    if any(r):
        raise ArithmeticError("inexact division")
    return _utrim(quot)


def _uprem(f, g):
    """Pseudo-remainder of f by g (up to a nonzero integer factor)."""
    r = list(f)
    dg = len(g) - 1
    lg = g[-1]
    while len(r) - 1 >= dg and r:
        lr = r[-1]
        shift = len(r) - 1 - dg
        r = [lg * c for c in r]
        for j, d in enumerate(g):
            r[shift + j] -= lr * d
        r = list(_utrim(r))
    return tuple(r)


def _upp(f):
    c = _ucontent(f)
    if f and f[-1] < 0:
        c = -c
    return _udiv_int(f, c) if c not in (0, 1) else f


def _usign(f):
    return tuple(-x for x in f) if f and f[-1] < 0 else f


def _ugcd(f, g):
    """gcd in Z[q], leading coefficient positive."""
    if not f:
        return _usign(g)
    if not g:
        return _usign(f)
    c = igcd(_ucontent(f), _ucontent(g))
    f, g = _upp(f), _upp(g)
    if len(f) < len(g):
        f, g = g, f
    while g:
        if len(g) == 1:
            f = (1,)
            break
        r = _uprem(f, g)
        f, g = g, (_upp(r) if r else ())
    f = _upp(f)
    return tuple(c * x for x in f)


# ---------------------------------------------------------------------------
# BiPoly
# ---------------------------------------------------------------------------

def _grlex_key(e: Exp):
    return (e[0] + e[1], e[0], e[1])


class BiPoly:
    """Integer polynomial in q and a, stored as ``{(dq, da): coeff}``."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Dict[Exp, int] = None, _clean: bool = False):
        if terms is None:
            terms = {}
        elif not _clean:
            terms = {e: c for e, c in terms.items() if c}
        self.terms = terms
        self._hash = None

    @classmethod
    def const(cls, c: int) -> "BiPoly":
        return cls({(0, 0): c}) if c else ZERO_POLY

    @classmethod
    def monomial(cls, dq: int, da: int, c: int = 1) -> "BiPoly":
        return cls({(dq, da): c}) if c else ZERO_POLY

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"BiPoly({self.terms!r})"

    def is_one(self):
        return len(self.terms) == 1 and self.terms.get((0, 0)) == 1

    def is_monomial(self):
        return len(self.terms) == 1

    def leading(self) -> Tuple[Exp, int]:
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def content(self) -> int:
        c = 0
        for v in self.terms.values():
            c = igcd(c, v)
            if c == 1:
                break
        return c

    def min_exponents(self) -> Exp:
        return (min(e[0] for e in self.terms), min(e[1] for e in self.terms))

    def degree(self, var: int) -> int:
        return max((e[var] for e in self.terms), default=-1)

    def __neg__(self):
        return BiPoly({e: -c for e, c in self.terms.items()}, _clean=True)

    def __add__(self, other: "BiPoly"):
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return BiPoly(out, _clean=True)

    def __sub__(self, other: "BiPoly"):
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) - c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return BiPoly(out, _clean=True)

    def __mul__(self, other: "BiPoly"):
        a, b = self.terms, other.terms
        if not a or not b:
            return ZERO_POLY
        if len(a) == 1:
            ((e, c),) = a.items()
            return BiPoly({(e[0] + f[0], e[1] + f[1]): c * d for f, d in b.items()}, _clean=True)
        if len(b) == 1:
            ((f, d),) = b.items()
            return BiPoly({(e[0] + f[0], e[1] + f[1]): c * d for e, c in a.items()}, _clean=True)
        out: Dict[Exp, int] = {}
        for (i, j), c in a.items():
            for (k, l), d in b.items():
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + c * d
        return BiPoly({e: c for e, c in out.items() if c}, _clean=True)

    def scale(self, c: int) -> "BiPoly":
        if c == 1:
            return self
        if c == 0:
            return ZERO_POLY
        return BiPoly({e: v * c for e, v in self.terms.items()}, _clean=True)

    def shift(self, dq: int, da: int) -> "BiPoly":
        """Multiply by q^dq a^da (negative shifts must keep exponents >= 0)."""
        if dq == 0 and da == 0:
            return self
        return BiPoly({(e[0] + dq, e[1] + da): c for e, c in self.terms.items()}, _clean=True)

    def __pow__(self, n: int) -> "BiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = ONE_POLY
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- conversion to recursive form: list indexed by a-degree of Z[q] tuples
    def _to_rec(self) -> List[Tuple[int, ...]]:
        da = self.degree(1)
        rows: List[List[int]] = [[] for _ in range(da + 1)]
        for (i, j), c in self.terms.items():
            row = rows[j]
            if len(row) <= i:
                row.extend([0] * (i + 1 - len(row)))
            row[i] = c
        return [tuple(r) for r in rows]

    @staticmethod
    def _from_rec(rec) -> "BiPoly":
        return BiPoly({(i, j): c for j, row in enumerate(rec) for i, c in enumerate(row) if c}, _clean=True)

    def divexact(self, other: "BiPoly") -> "BiPoly":
        """Exact quotient self/other; raises ArithmeticError if not divisible."""
        if not other.terms:
            raise DivisionByZero("polynomial division by zero")
        if other.is_one():
            return self
        if not self.terms:
            return ZERO_POLY
        if len(other.terms) == 1:
            ((f, d),) = other.terms.items()
            out = {}
            for e, c in self.terms.items():
                qe = (e[0] - f[0], e[1] - f[1])
                if qe[0] < 0 or qe[1] < 0 or c % d:
                    raise ArithmeticError("inexact division")
                out[qe] = c // d
            return BiPoly(out, _clean=True)
        num = self._to_rec()
        den = other._to_rec()
        dd = len(den) - 1
        if len(num) - 1 < dd:
            raise ArithmeticError("inexact division")
        num = list(num)
        quot = [()] * (len(num) - dd)
        for k in range(len(num) - 1 - dd, -1, -1):
            c = num[k + dd]
            if not c:
                continue
            qk = _udivexact(c, den[-1])
            quot[k] = qk
            for j, g in enumerate(den):
                if g:
                    num[k + j] = _usub(num[k + j], _umul(qk, g))
        if any(num):
            raise ArithmeticError("inexact division")
        return BiPoly._from_rec(quot)

    def evaluate(self, q, a):
        """Horner-free evaluation at ring elements supporting + * and ** (n >= 0)."""
        total = None
        qp: Dict[int, object] = {}
        ap: Dict[int, object] = {}
        for (i, j), c in self.terms.items():
            if i not in qp:
                qp[i] = q ** i
            if j not in ap:
                ap[j] = a ** j
            term = qp[i] * ap[j] * c
            total = term if total is None else total + term
        return total


ZERO_POLY = BiPoly({}, _clean=True)
ONE_POLY = BiPoly({(0, 0): 1}, _clean=True)


def _normalize_sign(p: BiPoly) -> BiPoly:
    return -p if p.terms and p.leading()[1] < 0 else p


def _rec_content(rec):
    c = ()
    for row in rec:
        if row:
            c = _ugcd(c, row)
            if c == (1,):
                break
    return c


def _rec_pp(rec, c):
    if c == (1,):
        return rec
    return [(_udivexact(row, c) if row else ()) for row in rec]


def _rec_prem(f, g):
    r = list(f)
    dg = len(g) - 1
    lg = g[-1]
    while len(r) - 1 >= dg and r:
        lr = r[-1]
        shift = len(r) - 1 - dg
        r = [_umul(lg, c) for c in r]
        for j, d in enumerate(g):
            if d:
                r[shift + j] = _usub(r[shift + j], _umul(lr, d))
        while r and not r[-1]:
            r.pop()
    return r


@lru_cache(maxsize=200_000)
def poly_gcd(f: BiPoly, g: BiPoly) -> BiPoly:
    """gcd in Z[q, a], normalized to a positive grlex-leading coefficient."""
    if not f.terms:
        return _normalize_sign(g) if g.terms else ZERO_POLY
    if not g.terms:
        return _normalize_sign(f)
    mf, mg = f.min_exponents(), g.min_exponents()
    mono = (min(mf[0], mg[0]), min(mf[1], mg[1]))
    if len(f.terms) == 1 or len(g.terms) == 1:
        return BiPoly.monomial(mono[0], mono[1], igcd(f.content(), g.content()))
    fr = f.shift(-mf[0], -mf[1])._to_rec()
    gr = g.shift(-mg[0], -mg[1])._to_rec()
    cf, cg = _rec_content(fr), _rec_content(gr)
    c = _ugcd(cf, cg)
    fr, gr = _rec_pp(fr, cf), _rec_pp(gr, cg)
    if len(fr) == 1 or len(gr) == 1:
        h = [(1,)]
    else:
        if len(fr) < len(gr):
            fr, gr = gr, fr
        while gr:
            if len(gr) == 1:
                fr = [(1,)]
                break
            r = _rec_prem(fr, gr)
            if r:
                r = _rec_pp(r, _rec_content(r))
            fr, gr = gr, r
        h = fr
    res = BiPoly._from_rec([_umul(c, row) for row in h]).shift(*mono)
    return _normalize_sign(res)


# ---------------------------------------------------------------------------
# RationalFunction
# ---------------------------------------------------------------------------

Scalar = Union["RationalFunction", int]


class RationalFunction:
    """Canonical element num/den of Q(q, a); immutable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: BiPoly, den: BiPoly = ONE_POLY, _canonical: bool = False):
        if not _canonical:
            if not den.terms:
                raise DivisionByZero("zero denominator")
            if not num.terms:
                num, den = ZERO_POLY, ONE_POLY
            else:
                g = poly_gcd(num, den)
                if not g.is_one():
                    num, den = num.divexact(g), den.divexact(g)
                if den.leading()[1] < 0:
                    num, den = -num, -den
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def from_int(cls, n: int) -> "RationalFunction":
        if n == 0:
            return ZERO
        if n == 1:
            return ONE
        return cls(BiPoly.const(n), ONE_POLY, _canonical=True)

    @classmethod
    def laurent(cls, dq: int, da: int, c: int = 1) -> "RationalFunction":
        """c * q^dq * a^da for any integer exponents."""
        if c == 0:
            return ZERO
        num = BiPoly.monomial(max(dq, 0), max(da, 0), c)
        den = BiPoly.monomial(max(-dq, 0), max(-da, 0), 1)
        return cls(num, den, _canonical=True)

    @staticmethod
    def coerce(v) -> "RationalFunction":
        if isinstance(v, RationalFunction):
            return v
        if isinstance(v, int):
            return RationalFunction.from_int(v)
        if isinstance(v, str):
            return rf_parse(v)
        raise TypeError(f"cannot coerce {type(v).__name__} to RationalFunction")

    def canonical(self) -> "RationalFunction":
        return RationalFunction(self.num, self.den)

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def __bool__(self):
        return bool(self.num.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = RationalFunction.from_int(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RationalFunction({rf_format(self)!r})"

    def __str__(self):
        return rf_format(self)

    def __neg__(self):
        if not self.num.terms:
            return self
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, int):
                other = RationalFunction.from_int(other)
            else:
                return NotImplemented
        return _rf_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, int):
                other = RationalFunction.from_int(other)
            else:
                return NotImplemented
        return _rf_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, int):
                other = RationalFunction.from_int(other)
            else:
                return NotImplemented
        return _rf_mul(self, other)

    __rmul__ = __mul__

    def inv(self) -> "RationalFunction":
        if not self.num.terms:
            raise DivisionByZero("inverse of zero")
        num, den = self.den, self.num
        if den.leading()[1] < 0:
            num, den = -num, -den
        return RationalFunction(num, den, _canonical=True)

    def __truediv__(self, other):
        other = RationalFunction.coerce(other) if not isinstance(other, RationalFunction) else other
        return _rf_mul(self, other.inv())

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        if n == 0:
            return ONE
        return RationalFunction(self.num ** n, self.den ** n, _canonical=True)

    def substitute(self, target: str, value) -> "RationalFunction":
        return rf_substitute(self, target, value)


def _rf_add(x: RationalFunction, y: RationalFunction) -> RationalFunction:
    if not x.num.terms:
        return y
    if not y.num.terms:
        return x
    d1, d2 = x.den, y.den
    if d1 == d2:
        n = x.num + y.num
        if not n.terms:
            return ZERO
        if d1.is_one():
            return RationalFunction(n, d1, _canonical=True)
        return RationalFunction(n, d1)
    g = poly_gcd(d1, d2)
    if g.is_one():
        n = x.num * d2 + y.num * d1
        if not n.terms:
            return ZERO
        return RationalFunction(n, d1 * d2, _canonical=True)
    d1g, d2g = d1.divexact(g), d2.divexact(g)
    t = x.num * d2g + y.num * d1g
    if not t.terms:
        return ZERO
    g2 = poly_gcd(t, g)
    return RationalFunction(t.divexact(g2), d1g * d2.divexact(g2), _canonical=True)


def _rf_mul(x: RationalFunction, y: RationalFunction) -> RationalFunction:
    if not x.num.terms or not y.num.terms:
        return ZERO
    if x.den.is_one() and y.den.is_one():
        return RationalFunction(x.num * y.num, ONE_POLY, _canonical=True)
    g1 = poly_gcd(x.num, y.den)
    g2 = poly_gcd(y.num, x.den)
    n1 = x.num if g1.is_one() else x.num.divexact(g1)
    d2 = y.den if g1.is_one() else y.den.divexact(g1)
    n2 = y.num if g2.is_one() else y.num.divexact(g2)
    d1 = x.den if g2.is_one() else x.den.divexact(g2)
    num, den = n1 * n2, d1 * d2
    if den.leading()[1] < 0:
        num, den = -num, -den
    return RationalFunction(num, den, _canonical=True)


ZERO = RationalFunction(ZERO_POLY, ONE_POLY, _canonical=True)
ONE = RationalFunction(ONE_POLY, ONE_POLY, _canonical=True)
Q = RationalFunction(BiPoly.monomial(1, 0), ONE_POLY, _canonical=True)
A = RationalFunction(BiPoly.monomial(0, 1), ONE_POLY, _canonical=True)


def rf_arith(op: str, lhs, rhs=None) -> RationalFunction:
    """Dispatch ``add|sub|mul|div|neg|inv`` on canonical values."""
    lhs = RationalFunction.coerce(lhs)
    if op == "neg":
        return -lhs
    if op == "inv":
        return lhs.inv()
    rhs = RationalFunction.coerce(rhs)
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        return lhs / rhs
    raise ValueError(f"unknown operation {op!r}")


def qbracket(n: int) -> RationalFunction:
    """[n]_q = (q^n - q^-n)/(q - q^-1)."""
    return (RationalFunction.laurent(n, 0) - RationalFunction.laurent(-n, 0)) / (
        Q - RationalFunction.laurent(-1, 0))


def rf_substitute(f: RationalFunction, target: str, value) -> RationalFunction:
    """Replace the indeterminate ``target`` ('q' or 'a') by ``value``."""
    if target not in ("q", "a"):
        raise ValueError(f"unknown indeterminate {target!r}")
    value = RationalFunction.coerce(value)
    args = (value, A) if target == "q" else (Q, value)
    num = f.num.evaluate(*args) if f.num.terms else ZERO
    den = f.den.evaluate(*args)
    if den.is_zero():
        raise DivisionByZero(f"denominator vanishes under {target} := {rf_format(value)}")
    return num / den


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------

def _laurent_terms(num: BiPoly, shift: Exp) -> List[Tuple[int, int, int]]:
    """Terms (c, dq, da) of num * q^-shift[0] a^-shift[1], display order."""
    terms = [(c, e[0] - shift[0], e[1] - shift[1]) for e, c in num.terms.items()]
    terms.sort(key=lambda t: (abs(t[1] + t[2]), -(t[1] + t[2]), -t[1], -t[2]))
    return terms


def _fmt_power(var: str, n: int) -> str:
    if n == 1:
        return var
    return f"{var}^{n}"


def _fmt_terms(terms) -> str:
    parts = []
    for c, dq, da in terms:
        factors = []
        if dq:
            factors.append(_fmt_power("q", dq))
        if da:
            factors.append(_fmt_power("a", da))
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts) if parts else "0"


def rf_format(f: RationalFunction) -> str:
    """Deterministic text form; q before a, terms by ascending |total degree|.

    A monomial factor of the denominator is absorbed into the numerator as
    negative exponents, so Laurent polynomials print without a fraction bar.
    """
    if f.is_zero():
        return "0"
    dm = f.den.min_exponents()
    rest = f.den.shift(-dm[0], -dm[1])
    # rest has no monomial factor; a monomial rest is therefore an integer
    num_terms = _laurent_terms(f.num, dm)
    if rest.is_monomial():
        d = rest.terms[(0, 0)]
        if d == 1:
            return _fmt_terms(num_terms)
        num_s = _fmt_terms(num_terms)
        if len(num_terms) > 1:
            num_s = f"({num_s})"
        return f"{num_s}/{d}"
    num_s = _fmt_terms(num_terms)
    if len(num_terms) > 1:
        num_s = f"({num_s})"
    return f"{num_s}/({_fmt_terms(_laurent_terms(rest, (0, 0)))})"


def is_simple(f: RationalFunction) -> bool:
    """True when the formatted scalar is a single signed Laurent term."""
    return len(f.num.terms) == 1 and f.den.is_monomial() and f.den.content() == 1


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def tokenize(text: str, names: Iterable[str]) -> List[Tuple[str, object, int]]:
    """Split text into (kind, value, pos) tokens.

    Identifier runs are split greedily into the longest known names, so
    ``qxy`` reads as ``q x y``.
    """
    known = sorted(names, key=len, reverse=True)
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            word = m.group(2)
            i = 0
            while i < len(word):
                for name in known:
                    if word.startswith(name, i):
                        out.append(("name", name, start + i))
                        i += len(name)
                        break
                else:
                    if word[i].isdigit():
                        j = i
                        while j < len(word) and word[j].isdigit():
                            j += 1
                        out.append(("int", int(word[i:j]), start + i))
                        i = j
                    else:
                        raise ParseError(f"unknown symbol {word[i:]!r}", start + i, text)
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            out.append(("op", ch, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class Parser:
    """Recursive-descent parser producing a small tuple AST.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*'? factor | '/' factor)*
    factor := base ('^' ['-'|'+'] integer)?
    base   := name | integer | '(' expr ')'
    """

    def __init__(self, text: str, names: Iterable[str]):
        self.text = text
        self.toks = tokenize(text, names)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        node = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return node

    def expr(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            node = self.term()
            if tok[1] == "-":
                node = ("neg", node)
        else:
            node = self.term()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                node = ("add" if tok[1] == "+" else "sub", node, rhs)
            else:
                return node

    def _starts_factor(self, tok):
        return tok[0] in ("name", "int") or (tok[0] == "op" and tok[1] == "(")

    def term(self):
        node = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                node = ("mul", node, self.factor())
            elif tok[0] == "op" and tok[1] == "/":
                self.take()
                node = ("div", node, self.factor())
            elif self._starts_factor(tok):
                node = ("mul", node, self.factor())
            else:
                return node

    def factor(self):
        base = self.base()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            sign = 1
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                sign = -1 if tok[1] == "-" else 1
            tok = self.take()
            if tok[0] != "int":
                self.error("expected integer exponent", tok)
            return ("pow", base, sign * tok[1])
        return base

    def base(self):
        tok = self.take()
        if tok[0] == "int":
            return ("int", tok[1])
        if tok[0] == "name":
            return ("name", tok[1], tok[2])
        if tok[0] == "op" and tok[1] == "(":
            node = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                self.error("expected ')'", close)
            return node
        if tok[0] == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected token {tok[1]!r}", tok)


SCALAR_NAMES = ("q", "a")


def _eval_scalar(node) -> RationalFunction:
    kind = node[0]
    if kind == "int":
        return RationalFunction.from_int(node[1])
    if kind == "name":
        return Q if node[1] == "q" else A
    if kind == "neg":
        return -_eval_scalar(node[1])
    if kind == "add":
        return _eval_scalar(node[1]) + _eval_scalar(node[2])
    if kind == "sub":
        return _eval_scalar(node[1]) - _eval_scalar(node[2])
    if kind == "mul":
        return _eval_scalar(node[1]) * _eval_scalar(node[2])
    if kind == "div":
        return _eval_scalar(node[1]) / _eval_scalar(node[2])
    if kind == "pow":
        return _eval_scalar(node[1]) ** node[2]
    raise AssertionError(kind)


def rf_parse(text: str) -> RationalFunction:
    """Parse the scalar grammar; e.g. ``rf_parse("(q-q^-1)^2")``."""
    return _eval_scalar(Parser(text, SCALAR_NAMES).parse())


def parse_subst(text: str) -> Tuple[str, RationalFunction]:
    """Parse ``a=<scalar>`` or ``q=<scalar>``."""
    var, sep, value = text.partition("=")
    var = var.strip()
    if not sep or var not in ("q", "a"):
        raise ParseError("expected 'q=<scalar>' or 'a=<scalar>'", 0, text)
    return var, rf_parse(value)


def iter_coeffs(f: RationalFunction) -> Iterator[Tuple[Exp, int]]:
    yield from f.num.terms.items()


# ---------------------------------------------------------------------------
# Laurent-numerator form, used for bulk arithmetic over a shared denominator
# ---------------------------------------------------------------------------

LP = Dict[Exp, int]  # Laurent polynomial: exponents may be negative


def lp_mul(f: LP, g: LP) -> LP:
    if len(f) == 1:
        ((e, c),) = f.items()
        return {(e[0] + k[0], e[1] + k[1]): c * d for k, d in g.items()}
    if len(g) == 1:
        ((k, d),) = g.items()
        return {(e[0] + k[0], e[1] + k[1]): c * d for e, c in f.items()}
    out: LP = {}
    for (i, j), c in f.items():
        for (k, l), d in g.items():
            key = (i + k, j + l)
            out[key] = out.get(key, 0) + c * d
    return {e: c for e, c in out.items() if c}


def lp_addmul(acc: LP, f: LP, g: LP) -> None:
    """acc += f*g in place (zero entries may remain)."""
    for (i, j), c in f.items():
        for (k, l), d in g.items():
            key = (i + k, j + l)
            acc[key] = acc.get(key, 0) + c * d


@lru_cache(maxsize=100_000)
def rf_split(f: RationalFunction) -> Tuple[Tuple[Tuple[Exp, int], ...], BiPoly]:
    """Write f = N/D with N Laurent and D free of monomial factors."""
    dm = f.den.min_exponents()
    d = f.den.shift(-dm[0], -dm[1])
    n = tuple(((e[0] - dm[0], e[1] - dm[1]), c) for e, c in f.num.terms.items())
    return n, d


def poly_lcm(f: BiPoly, g: BiPoly) -> BiPoly:
    if f == g or g.is_one():
        return f
    if f.is_one():
        return g
    return (f * g).divexact(poly_gcd(f, g))


def rf_from_lp(n: LP, d: BiPoly) -> RationalFunction:
    """Canonical value of (Laurent n) / (polynomial d)."""
    n = {e: c for e, c in n.items() if c}
    if not n:
        return ZERO
    mq = min(e[0] for e in n)
    ma = min(e[1] for e in n)
    num = BiPoly({(e[0] - mq, e[1] - ma): c for e, c in n.items()}, _clean=True)
    den = d.shift(max(-mq, 0), max(-ma, 0))
    num = num.shift(max(mq, 0), max(ma, 0))
    if den.is_one():
        return RationalFunction(num, den, _canonical=True)
    return RationalFunction(num, den)
