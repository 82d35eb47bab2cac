"""Normal forms and exact multiplication in U_q(sl2).

Two PBW bases are supported: the equitable basis x^r y^s z^t and the
Chevalley basis e^r k^s f^t (r, t >= 0, s any integer).  An element is a
finite map from exponent triples to coefficients in Q(q, a).

Products are computed by left-multiplying a normal monomial by one generator
at a time; each step rewrites the leftmost out-of-order pair using the rules
in ``EQUITABLE_RULES`` / ``CHEVALLEY_RULES`` (closed forms for repeated
applications are used where they are short).  Results are memoised per pair
of monomials.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Tuple

from .coeff_field import (ONE, ONE_POLY, BiPoly, ZERO, Q, RationalFunction, is_simple,
                          lp_addmul, lp_mul, poly_lcm, rf_format, rf_from_lp,
                          rf_parse, rf_split)

Mono = Tuple[int, int, int]
Terms = Dict[Mono, RationalFunction]

EQUITABLE = "equitable"
CHEVALLEY = "chevalley"
BASES = (EQUITABLE, CHEVALLEY)

_SYMBOLS = {EQUITABLE: ("x", "y", "z"), CHEVALLEY: ("e", "k", "f")}


class BasisMismatch(ValueError):
    pass


def _qp(n: int) -> RationalFunction:
    return RationalFunction.laurent(n, 0)


QQI = Q - _qp(-1)  # q - q^-1


def _check_basis(basis: str) -> str:
    if basis not in BASES:
        raise ValueError(f"unknown basis {basis!r}")
    return basis


class NormalElement:
    """Immutable element of U_q(sl2) in a fixed PBW basis."""

    __slots__ = ("basis", "coeffs", "_hash")

    def __init__(self, basis: str, coeffs: Mapping[Mono, RationalFunction] = None,
                 _clean: bool = False):
        self.basis = _check_basis(basis)
        if coeffs is None:
            coeffs = {}
        elif not _clean:
            clean = {}
            for m, c in coeffs.items():
                c = RationalFunction.coerce(c)
                if c:
                    r, s, t = m
                    if r < 0 or t < 0:
                        raise ValueError(f"negative exponent in monomial {m}")
                    clean[(int(r), int(s), int(t))] = c
            coeffs = clean
        self.coeffs: Dict[Mono, RationalFunction] = coeffs
        self._hash = None

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, basis: str = EQUITABLE) -> "NormalElement":
        return cls(basis, {}, _clean=True)

    @classmethod
    def one(cls, basis: str = EQUITABLE) -> "NormalElement":
        return cls(basis, {(0, 0, 0): ONE}, _clean=True)

    @classmethod
    def monomial(cls, basis: str, m: Mono, coeff=ONE) -> "NormalElement":
        return cls(basis, {m: coeff})

    @classmethod
    def scalar(cls, c, basis: str = EQUITABLE) -> "NormalElement":
        return cls(basis, {(0, 0, 0): c})

    # protocol ---------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, NormalElement):
            return NotImplemented
        return self.basis == other.basis and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.basis, frozenset(self.coeffs.items())))
        return self._hash

    def __repr__(self):
        return f"NormalElement({self.basis!r}, {format_element(self)!r})"

    def __str__(self):
        return format_element(self)

    def __add__(self, other):
        return nc_linear("add", self, _as_element(other, self.basis))

    def __radd__(self, other):
        return nc_linear("add", _as_element(other, self.basis), self)

    def __sub__(self, other):
        return nc_linear("sub", self, _as_element(other, self.basis))

    def __rsub__(self, other):
        return nc_linear("sub", _as_element(other, self.basis), self)

    def __neg__(self):
        return nc_linear("neg", self)

    def __mul__(self, other):
        if isinstance(other, NormalElement):
            return nc_multiply(self, other)
        return nc_linear("scalar_mul", RationalFunction.coerce(other), self)

    def __rmul__(self, other):
        return nc_linear("scalar_mul", RationalFunction.coerce(other), self)

    def __truediv__(self, other):
        return nc_linear("scalar_mul", RationalFunction.coerce(other).inv(), self)

    def __pow__(self, n: int):
        return nc_power(self, n)

    def coeff(self, m: Mono) -> RationalFunction:
        return self.coeffs.get(m, ZERO)

    def monomials(self) -> List[Mono]:
        return sorted(self.coeffs)

    def map_coeffs(self, fn) -> "NormalElement":
        return NormalElement(self.basis, {m: fn(c) for m, c in self.coeffs.items()})


def _as_element(v, basis: str) -> NormalElement:
    if isinstance(v, NormalElement):
        return v
    return NormalElement.scalar(RationalFunction.coerce(v), basis)


# ---------------------------------------------------------------------------
# sparse helpers
# ---------------------------------------------------------------------------

def _acc(out: Terms, m: Mono, c: RationalFunction) -> None:
    old = out.get(m)
    if old is None:
        out[m] = c
    else:
        v = old + c
        if v:
            out[m] = v
        else:
            del out[m]


def _acc_terms(out: Terms, terms: Mapping[Mono, RationalFunction], c: RationalFunction) -> None:
    if c.is_one():
        for m, d in terms.items():
            _acc(out, m, d)
    else:
        for m, d in terms.items():
            _acc(out, m, c * d)


# The rewriting engine keeps structure constants as integer Laurent
# polynomials in q and w, where w stands for 1/(q - q^-1).  Keys are
# (q-exponent, w-exponent).  Only the final cached products are turned into
# honest fractions.
ECoeff = Dict[Tuple[int, int], int]
ETerms = Dict[Mono, ECoeff]

_E_ONE: ECoeff = {(0, 0): 1}


def _eq_pow(n: int) -> ECoeff:
    return {(n, 0): 1}


def _e_one_minus(n: int) -> ECoeff:
    """1 - q^n."""
    return {(0, 0): 1, (n, 0): -1} if n else {}


def _eacc(out: ETerms, m: Mono, c: ECoeff, scale: ECoeff = _E_ONE) -> None:
    slot = out.get(m)
    if slot is None:
        out[m] = slot = {}
    for (i, j), x in c.items():
        for (k, l), y in scale.items():
            key = (i + k, j + l)
            slot[key] = slot.get(key, 0) + x * y


def _eclean(out: ETerms) -> ETerms:
    res = {}
    for m, c in out.items():
        c = {e: v for e, v in c.items() if v}
        if c:
            res[m] = c
    return res


# -- equitable: generator times normal monomial ------------------------------

def _eq_x(m: Mono) -> ETerms:
    return {(m[0] + 1, m[1], m[2]): _E_ONE}


def _eq_y(m: Mono) -> ETerms:
    r, s, t = m
    if r == 0:
        return {(0, s + 1, t): _E_ONE}
    # y x^r = q^{2r} x^r y - (q^{2r} - 1) x^{r-1}
    return {(r, s + 1, t): _eq_pow(2 * r), (r - 1, s, t): _e_one_minus(2 * r)}


@lru_cache(maxsize=None)
def _eq_yinv(m: Mono) -> ETerms:
    r, s, t = m
    if r == 0:
        return {(0, s - 1, t): _E_ONE}
    # y^-1 x -> q^-2 x y^-1 + (1 - q^-2) y^-2
    inner = _eq_yinv((r - 1, s, t))
    out: ETerms = {}
    for mm, c in inner.items():
        _eacc(out, (mm[0] + 1, mm[1], mm[2]), c, _eq_pow(-2))
    for mm, c in inner.items():
        for m3, c3 in _eq_yinv(mm).items():
            _eacc(out, m3, lp_mul(c, c3), _e_one_minus(-2))
    return _eclean(out)


def _eq_z(m: Mono) -> ETerms:
    r, s, t = m
    # z y^s = q^{2s} y^s z - (q^{2s} - 1) y^{s-1}
    zy = {(r, s, t + 1): _eq_pow(2 * s)}
    if s:
        zy[(r, s - 1, t)] = _e_one_minus(2 * s)
    if r == 0:
        return zy
    # z x^r = q^{-2r} x^r z + (1 - q^{-2r}) x^{r-1}
    out = {mm: lp_mul(c, _eq_pow(-2 * r)) for mm, c in zy.items()}
    out[(r - 1, s, t)] = _e_one_minus(-2 * r)
    return out


# -- Chevalley ---------------------------------------------------------------

def _ch_e(m: Mono) -> ETerms:
    return {(m[0] + 1, m[1], m[2]): _E_ONE}


def _ch_k(m: Mono) -> ETerms:
    return {(m[0], m[1] + 1, m[2]): _eq_pow(2 * m[0])}


def _ch_kinv(m: Mono) -> ETerms:
    return {(m[0], m[1] - 1, m[2]): _eq_pow(-2 * m[0])}


@lru_cache(maxsize=None)
def _ch_f(m: Mono) -> ETerms:
    r, s, t = m
    if r == 0:
        # f k^s = q^{2s} k^s f
        return {(0, s, t + 1): _eq_pow(2 * s)}
    # f e -> e f - (k - k^-1)/(q - q^-1)
    rest = (r - 1, s, t)
    out: ETerms = {}
    for mm, c in _ch_f(rest).items():
        _eacc(out, (mm[0] + 1, mm[1], mm[2]), c)
    for mm, c in _ch_k(rest).items():
        _eacc(out, mm, c, {(0, 1): -1})
    for mm, c in _ch_kinv(rest).items():
        _eacc(out, mm, c, {(0, 1): 1})
    return _eclean(out)


_GEN_ACTIONS = {
    EQUITABLE: (_eq_x, _eq_y, _eq_yinv, _eq_z),
    CHEVALLEY: (_ch_e, _ch_k, _ch_kinv, _ch_f),
}


@lru_cache(maxsize=None)
def _mono_mul_raw(basis: str, m1: Mono, m2: Mono) -> ETerms:
    r1, s1, t1 = m1
    r2, s2, t2 = m2
    if t1 == 0 and r2 == 0:
        return {(r1, s1 + s2, t2): _E_ONE}
    if t1 == 0 and s1 == 0:
        return {(r1 + r2, s2, t2): _E_ONE}
    if r2 == 0 and s2 == 0:
        return {(r1, s1, t1 + t2): _E_ONE}
    gx, gy, gyi, gz = _GEN_ACTIONS[basis]
    # peel the rightmost letter of m1 and push it onto m2
    if t1 > 0:
        head, moved = (r1, s1, t1 - 1), gz(m2)
    elif s1 > 0:
        head, moved = (r1, s1 - 1, 0), gy(m2)
    elif s1 < 0:
        head, moved = (r1, s1 + 1, 0), gyi(m2)
    else:
        head, moved = (r1 - 1, 0, 0), gx(m2)
    if head == (0, 0, 0):
        return moved
    out: ETerms = {}
    for mm, c in moved.items():
        for m3, c3 in _mono_mul_raw(basis, head, mm).items():
            _eacc(out, m3, c3, c)
    return _eclean(out)


_Q2M1 = BiPoly({(2, 0): 1, (0, 0): -1})  # q^2 - 1


@lru_cache(maxsize=None)
def _mono_mul_split(basis: str, m1: Mono, m2: Mono):
    """Product as ((monomial, Laurent numerator), ...) over a polynomial den.

    w^j = q^j / (q^2 - 1)^j, so everything is put over (q^2 - 1)^J.
    """
    raw = _mono_mul_raw(basis, m1, m2)
    top = max((j for c in raw.values() for (_, j) in c), default=0)
    if top == 0:
        return tuple(raw.items()), ONE_POLY
    den = _Q2M1 ** top
    pw = [(_Q2M1 ** (top - j)).terms for j in range(top + 1)]
    nums = []
    for m, c in raw.items():
        n: dict = {}
        for (i, j), v in c.items():
            lp_addmul(n, {(i + j, 0): v}, pw[j])
        n = {e: v for e, v in n.items() if v}
        if n:
            nums.append((m, n))
    return tuple(nums), den


def mono_mul(basis: str, m1: Mono, m2: Mono) -> Terms:
    """Normal form of (monomial m1)(monomial m2)."""
    nums, den = _mono_mul_split(basis, m1, m2)
    return {m: rf_from_lp(n, den) for m, n in nums}


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def _same_basis(u: NormalElement, v: NormalElement) -> str:
    if u.basis != v.basis:
        raise BasisMismatch(f"basis mismatch: {u.basis} vs {v.basis}")
    return u.basis


def _split_terms(terms: Mapping[Mono, RationalFunction]):
    """Common-denominator form: ({m: Laurent numerator}, polynomial D)."""
    parts = {m: rf_split(c) for m, c in terms.items()}
    den = ONE_POLY
    for _, d in parts.values():
        den = poly_lcm(den, d)
    out = {}
    for m, (n, d) in parts.items():
        n = dict(n)
        if d != den:
            n = lp_mul(n, den.divexact(d).terms)
        out[m] = n
    return out, den


def nc_multiply(u: NormalElement, v: NormalElement) -> NormalElement:
    basis = _same_basis(u, v)
    if not u.coeffs or not v.coeffs:
        return NormalElement.zero(basis)
    un, ud = _split_terms(u.coeffs)
    vn, vd = _split_terms(v.coeffs)
    pairs = []
    sden = ONE_POLY
    for m1 in un:
        for m2 in vn:
            nums, d = _mono_mul_split(basis, m1, m2)
            pairs.append((m1, m2, nums, d))
            sden = poly_lcm(sden, d)
    acc: Dict[Mono, dict] = {}
    for m1, m2, nums, d in pairs:
        pre = lp_mul(un[m1], vn[m2])
        if d != sden:
            pre = lp_mul(pre, sden.divexact(d).terms)
        for m, n in nums:
            slot = acc.get(m)
            if slot is None:
                acc[m] = slot = {}
            lp_addmul(slot, pre, n)
    den = ud * vd * sden
    out: Terms = {}
    for m, n in acc.items():
        c = rf_from_lp(n, den)
        if c:
            out[m] = c
    return NormalElement(basis, out, _clean=True)


def nc_power(u: NormalElement, n: int) -> NormalElement:
    if n < 0:
        raise ValueError("negative power of a general element")
    result = NormalElement.one(u.basis)
    for _ in range(n):
        result = nc_multiply(result, u)
    return result


def nc_linear(op: str, *args) -> NormalElement:
    """``add(u, v)``, ``sub(u, v)``, ``neg(u)``, ``scalar_mul(c, u)``."""
    if op == "neg":
        (u,) = args
        return NormalElement(u.basis, {m: -c for m, c in u.coeffs.items()}, _clean=True)
    if op == "scalar_mul":
        c, u = args
        c = RationalFunction.coerce(c)
        if not c:
            return NormalElement.zero(u.basis)
        return NormalElement(u.basis, {m: c * d for m, d in u.coeffs.items()}, _clean=True)
    if op in ("add", "sub"):
        u, v = args
        basis = _same_basis(u, v)
        out = dict(u.coeffs)
        sign = ONE if op == "add" else -ONE
        _acc_terms(out, v.coeffs, sign)
        return NormalElement(basis, out, _clean=True)
    raise ValueError(f"unknown linear operation {op!r}")


def nc_qbracket(u: NormalElement, v: NormalElement) -> NormalElement:
    """(q uv - q^-1 vu) / (q - q^-1)."""
    return (Q * nc_multiply(u, v) - _qp(-1) * nc_multiply(v, u)) / QQI


def generator(basis: str, name: str) -> NormalElement:
    """The PBW generators: x y y_inv z or e k k_inv f."""
    table = {
        EQUITABLE: {"x": (1, 0, 0), "y": (0, 1, 0), "y_inv": (0, -1, 0), "z": (0, 0, 1)},
        CHEVALLEY: {"e": (1, 0, 0), "k": (0, 1, 0), "k_inv": (0, -1, 0), "f": (0, 0, 1)},
    }[basis]
    if name not in table:
        raise KeyError(f"{name!r} is not a generator of the {basis} basis")
    return NormalElement.monomial(basis, table[name])


# ---------------------------------------------------------------------------
# change of basis
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _images(target: str) -> Tuple[NormalElement, NormalElement, NormalElement, NormalElement]:
    """Images of the four source generators (in source order) in ``target``."""
    g = lambda n: generator(target, n)
    if target == CHEVALLEY:
        e, k, ki, f = g("e"), g("k"), g("k_inv"), g("f")
        x = ki - Q * QQI * nc_multiply(ki, e)
        z = ki + QQI * f
        return x, k, ki, z
    x, y, yi, z = g("x"), g("y"), g("y_inv"), g("z")
    one = NormalElement.one(EQUITABLE)
    e = (one - nc_multiply(y, x)) * (Q * QQI).inv()
    f = (z - yi) / QQI
    return e, y, yi, f


@lru_cache(maxsize=None)
def _image_power(target: str, idx: int, n: int) -> NormalElement:
    if n == 0:
        return NormalElement.one(target)
    return nc_multiply(_image_power(target, idx, n - 1), _images(target)[idx])


@lru_cache(maxsize=None)
def _convert_mono(target: str, m: Mono) -> NormalElement:
    r, s, t = m
    yimg = _image_power(target, 1, s) if s >= 0 else _image_power(target, 2, -s)
    return nc_multiply(nc_multiply(_image_power(target, 0, r), yimg), _image_power(target, 3, t))


def convert(u: NormalElement, target: str) -> NormalElement:
    """Transport u along the isomorphism between the two presentations."""
    _check_basis(target)
    if u.basis == target:
        return u
    out: Terms = {}
    for m, c in u.coeffs.items():
        _acc_terms(out, _convert_mono(target, m).coeffs, c)
    return NormalElement(target, out, _clean=True)


# ---------------------------------------------------------------------------
# grading and subalgebra membership
# ---------------------------------------------------------------------------

REGIONS = ("uprime", "uvee", "uvee-cap-uprime", "even", "odd", "uprime-even", "uprime-odd")

_REGION_TESTS = {
    "uprime": lambda r, s, t: s >= 0,
    "uvee": lambda r, s, t: s <= 0,
    "uvee-cap-uprime": lambda r, s, t: s == 0,
    "even": lambda r, s, t: (r + s + t) % 2 == 0,
    "odd": lambda r, s, t: (r + s + t) % 2 == 1,
    "uprime-even": lambda r, s, t: s >= 0 and (r + s + t) % 2 == 0,
    "uprime-odd": lambda r, s, t: s >= 0 and (r + s + t) % 2 == 1,
}

_REGION_ALIASES = {
    "Uprime": "uprime", "Uvee": "uvee", "UveeCapUprime": "uvee-cap-uprime",
    "Even": "even", "Odd": "odd", "UprimeEven": "uprime-even", "UprimeOdd": "uprime-odd",
}


def _require_equitable(u: NormalElement) -> None:
    if u.basis != EQUITABLE:
        raise BasisMismatch("operation requires the equitable basis")


def membership(u: NormalElement, region: str) -> bool:
    _require_equitable(u)
    region = _REGION_ALIASES.get(region, region)
    if region not in _REGION_TESTS:
        raise ValueError(f"unknown region {region!r}")
    test = _REGION_TESTS[region]
    return all(test(*m) for m in u.coeffs)


def grade_split(u: NormalElement) -> Tuple[NormalElement, NormalElement]:
    _require_equitable(u)
    even = {m: c for m, c in u.coeffs.items() if sum(m) % 2 == 0}
    odd = {m: c for m, c in u.coeffs.items() if sum(m) % 2 == 1}
    return NormalElement(EQUITABLE, even, _clean=True), NormalElement(EQUITABLE, odd, _clean=True)


# ---------------------------------------------------------------------------
# rewrite rules and their soundness
# ---------------------------------------------------------------------------

# Words are tuples of letters; '-' suffix marks an inverse letter.
Word = Tuple[str, ...]


def _rf(text: str) -> RationalFunction:
    return rf_parse(text)


# Each rule: (name, lhs word, rhs as [(coeff, normal word)], relation).
# The relation is a list of (coeff, word) summing to zero in the algebra; it
# is one of the defining relations of the presentation (or a consequence of
# them used in the subalgebra generated by x, y^-1, z).
EQUITABLE_RULES = [
    ("y*y^-1", ("y", "y-"), [("1", ())],
     [("1", ("y", "y-")), ("-1", ())]),
    ("y^-1*y", ("y-", "y"), [("1", ())],
     [("1", ("y-", "y")), ("-1", ())]),
    ("y*x", ("y", "x"), [("q^2", ("x", "y")), ("1 - q^2", ())],
     [("q/(q-q^-1)", ("x", "y")), ("-q^-1/(q-q^-1)", ("y", "x")), ("-1", ())]),
    ("z*y", ("z", "y"), [("q^2", ("y", "z")), ("1 - q^2", ())],
     [("q/(q-q^-1)", ("y", "z")), ("-q^-1/(q-q^-1)", ("z", "y")), ("-1", ())]),
    ("z*x", ("z", "x"), [("q^-2", ("x", "z")), ("1 - q^-2", ())],
     [("q/(q-q^-1)", ("z", "x")), ("-q^-1/(q-q^-1)", ("x", "z")), ("-1", ())]),
    ("y^-1*x", ("y-", "x"), [("q^-2", ("x", "y-")), ("1 - q^-2", ("y-", "y-"))],
     [("q/(q-q^-1)", ("y-", "x")), ("-q^-1/(q-q^-1)", ("x", "y-")), ("-1", ("y-", "y-"))]),
    ("z*y^-1", ("z", "y-"), [("q^-2", ("y-", "z")), ("1 - q^-2", ("y-", "y-"))],
     [("q/(q-q^-1)", ("z", "y-")), ("-q^-1/(q-q^-1)", ("y-", "z")), ("-1", ("y-", "y-"))]),
]

CHEVALLEY_RULES = [
    ("k*e", ("k", "e"), [("q^2", ("e", "k"))],
     [("1", ("k", "e")), ("-q^2", ("e", "k"))]),
    ("k^-1*e", ("k-", "e"), [("q^-2", ("e", "k-"))],
     [("1", ("k-", "e")), ("-q^-2", ("e", "k-"))]),
    ("f*k", ("f", "k"), [("q^2", ("k", "f"))],
     [("1", ("k", "f")), ("-q^-2", ("f", "k"))]),
    ("f*k^-1", ("f", "k-"), [("q^-2", ("k-", "f"))],
     [("1", ("k-", "f")), ("-q^2", ("f", "k-"))]),
    ("f*e", ("f", "e"), [("1", ("e", "f")), ("-1/(q-q^-1)", ("k",)), ("1/(q-q^-1)", ("k-",))],
     [("1", ("e", "f")), ("-1", ("f", "e")), ("-1/(q-q^-1)", ("k",)), ("1/(q-q^-1)", ("k-",))]),
]


def _word_key(word: Word) -> Tuple:
    return word


def rule_soundness(rules=None) -> List[Tuple[str, bool]]:
    """Check each rewrite rule against its relation without using the engine.

    Relations are linear combinations of words of length <= 2.  Replacing the
    rule's left-hand word by its right-hand side must turn the relation into
    a formal combination of words that cancels completely, modulo the
    inverse-pair relations which are applied literally on the word level.
    """
    if rules is None:
        rules = EQUITABLE_RULES + CHEVALLEY_RULES
    results = []
    for name, lhs, rhs, relation in rules:
        formal: Dict[Word, RationalFunction] = {}
        for coeff, word in relation:
            c = _rf(coeff)
            if tuple(word) == tuple(lhs):
                for rc, rword in rhs:
                    _accw(formal, tuple(rword), c * _rf(rc))
            else:
                _accw(formal, _cancel_inverses(tuple(word)), c)
        lhs_in_rel = any(tuple(w) == tuple(lhs) for _, w in relation)
        results.append((name, lhs_in_rel and not formal))
    return results


def _cancel_inverses(word: Word) -> Word:
    out: List[str] = []
    for letter in word:
        if out and (out[-1] + "-" == letter or out[-1] == letter + "-"):
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def _accw(d: Dict[Word, RationalFunction], w: Word, c: RationalFunction) -> None:
    v = d.get(w, ZERO) + c
    if v:
        d[w] = v
    else:
        d.pop(w, None)


# ---------------------------------------------------------------------------
# text and record forms
# ---------------------------------------------------------------------------

def format_monomial(basis: str, m: Mono) -> str:
    syms = _SYMBOLS[basis]
    parts = []
    for sym, n in zip(syms, m):
        if n == 0:
            continue
        parts.append(sym if n == 1 else f"{sym}^{n}")
    return "*".join(parts) if parts else "1"


def format_element(u: NormalElement) -> str:
    """Canonical text: terms in lexicographic (r, s, t) order."""
    if not u.coeffs:
        return "0"
    pieces = []
    for m in sorted(u.coeffs):
        c = u.coeffs[m]
        mono = format_monomial(u.basis, m)
        negative = False
        if is_simple(c):
            if c.num.leading()[1] < 0:
                negative = True
                c = -c
            if c.is_one():
                body = mono
            else:
                body = f"{rf_format(c)}*{mono}"
        else:
            body = f"({rf_format(c)})*{mono}"
        if not pieces:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append((" - " if negative else " + ") + body)
    return "".join(pieces)


def to_records(u: NormalElement) -> List[dict]:
    return [{"r": m[0], "s": m[1], "t": m[2], "coeff": rf_format(u.coeffs[m])}
            for m in sorted(u.coeffs)]


def from_records(records: Iterable[Mapping], basis: str = EQUITABLE) -> NormalElement:
    coeffs: Terms = {}
    for rec in records:
        m = (int(rec["r"]), int(rec["s"]), int(rec["t"]))
        _acc(coeffs, m, rf_parse(str(rec["coeff"])))
    return NormalElement(basis, coeffs, _clean=True)
