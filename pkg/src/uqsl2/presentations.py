"""Named elements, (anti)automorphisms, presentations and the 3x3 matrices on S.

Everything is embedded in the equitable basis: a presentation is a list of
relations between expressions in its generators, each generator being a
named element; a morphism is given by the images of x, y, y^-1, z.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .coeff_field import ONE, ZERO, RationalFunction, parse_subst, rf_format, rf_parse, rf_substitute
from .expr import evaluate
from .linalg import FMatrix
from .ncalgebra import (CHEVALLEY, EQUITABLE, NormalElement, convert, format_element, generator,
                        nc_multiply, to_records)

NAMES = ("x", "y", "y_inv", "z", "e", "f", "k", "k_inv",
         "nu_x", "nu_y", "nu_z", "X", "Z", "A", "Lambda")

_DEFINITIONS = {
    "nu_x": "q*(1 - y*z)",
    "nu_y": "q*(1 - z*x)",
    "nu_z": "q*(1 - x*y)",
    "X": "a^-2*x + (1 - a^-2)*y^-1",
    "Z": "a^2*z + (1 - a^2)*y^-1",
    "A": "a^-1*x + a*z",
}


@lru_cache(maxsize=None)
def named(name: str) -> NormalElement:
    """Canonical equitable normal form of a named element."""
    if name in ("x", "y", "y_inv", "z"):
        return generator(EQUITABLE, name)
    if name in ("e", "f", "k", "k_inv"):
        return convert(generator(CHEVALLEY, name), EQUITABLE)
    if name in _DEFINITIONS:
        return evaluate(_DEFINITIONS[name], env=_BASE_ENV)
    if name == "Lambda":
        chev = evaluate("(q - q^-1)^2*e*f + q^-1*k + q*k^-1", env=_CHEV_ENV, basis=CHEVALLEY)
        return convert(chev, EQUITABLE)
    raise KeyError(name)


class _Env(dict):
    def __missing__(self, key):
        raise KeyError(key)


_BASE_ENV = _Env({n: generator(EQUITABLE, n) for n in ("x", "y", "y_inv", "z")})
_CHEV_ENV = _Env({n: generator(CHEVALLEY, n) for n in ("e", "f", "k", "k_inv")})


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------

class Morphism:
    """Algebra map or anti-map of U_q(sl2) given by images of x, y, y^-1, z."""

    GENS = ("x", "y", "y_inv", "z")

    def __init__(self, name: str, images: Mapping[str, NormalElement], anti: bool):
        missing = [g for g in self.GENS if g not in images]
        if missing:
            raise ValueError(f"missing images for {missing}")
        self.name = name
        self.images = {g: images[g] for g in self.GENS}
        self.anti = anti
        self._powers: Dict[Tuple[str, int], NormalElement] = {}

    @property
    def direction(self) -> str:
        return "antihomomorphism" if self.anti else "homomorphism"

    def __repr__(self):
        return f"Morphism({self.name!r}, {self.direction})"

    def _power(self, gen: str, n: int) -> NormalElement:
        key = (gen, n)
        if key not in self._powers:
            if n == 0:
                val = NormalElement.one()
            else:
                val = nc_multiply(self._power(gen, n - 1), self.images[gen])
            self._powers[key] = val
        return self._powers[key]

    def on_monomial(self, m) -> NormalElement:
        r, s, t = m
        ys = self._power("y", s) if s >= 0 else self._power("y_inv", -s)
        xs, zs = self._power("x", r), self._power("z", t)
        if self.anti:
            return nc_multiply(nc_multiply(zs, ys), xs)
        return nc_multiply(nc_multiply(xs, ys), zs)

    def __call__(self, u: NormalElement) -> NormalElement:
        basis = u.basis
        if basis != EQUITABLE:
            u = convert(u, EQUITABLE)
        out = NormalElement.zero()
        for m, c in u.coeffs.items():
            out = out + c * self.on_monomial(m)
        return convert(out, basis) if basis != EQUITABLE else out

    def substitute(self, var: str, value) -> "Morphism":
        value = RationalFunction.coerce(value)
        imgs = {g: v.map_coeffs(lambda c: rf_substitute(c, var, value)) for g, v in self.images.items()}
        return Morphism(f"{self.name}:{var}={rf_format(value)}", imgs, self.anti)


def _morphism_from_exprs(name: str, exprs: Mapping[str, str], anti: bool) -> Morphism:
    return Morphism(name, {g: evaluate(e) for g, e in exprs.items()}, anti)


_MORPHISM_EXPRS = {
    "sigma": ({"x": "X", "y": "y", "y_inv": "y^-1", "z": "Z"}, False),
    "tau": ({"x": "z", "y": "y", "y_inv": "y^-1", "z": "x"}, True),
    "dagger": ({"x": "Z", "y": "y", "y_inv": "y^-1", "z": "X"}, True),
    "identity": ({"x": "x", "y": "y", "y_inv": "y^-1", "z": "z"}, False),
}
MORPHISMS = ("sigma", "tau", "dagger", "sigma_inv")


@lru_cache(maxsize=None)
def get_morphism(spec: str) -> Morphism:
    """Resolve ``sigma``, ``tau``, ``dagger``, ``sigma_inv`` or ``name:a=<scalar>``."""
    spec = spec.strip()
    base, _, subst = spec.partition(":")
    if base == "sigma_inv":
        m = get_morphism("sigma").substitute("a", rf_parse("a^-1"))
        m.name = "sigma_inv"
    elif base in _MORPHISM_EXPRS:
        exprs, anti = _MORPHISM_EXPRS[base]
        m = _morphism_from_exprs(base, exprs, anti)
    else:
        raise KeyError(f"unknown morphism {base!r}")
    if subst:
        var, value = parse_subst(subst)
        m = m.substitute(var, value)
    return m


def apply_morphism(m, u: NormalElement) -> NormalElement:
    if isinstance(m, str):
        m = get_morphism(m)
    return m(u)


def morphism_relations(m) -> List[dict]:
    """Equitable relations evaluated on the images of m, products reversed for anti-maps."""
    if isinstance(m, str):
        m = get_morphism(m)
    return verify_presentation("equitable", env=dict(m.images), anti=m.anti)


def apply_chain(specs: Sequence[str], u: NormalElement) -> NormalElement:
    """Apply the morphisms in the listed order (first entry first)."""
    for s in specs:
        u = apply_morphism(s, u)
    return u


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------

@dataclass
class PresentationSpec:
    id: str
    generators: Tuple[str, ...]
    relations: List[Tuple[str, str]]
    description: str = ""

    def embedding(self) -> Dict[str, NormalElement]:
        return {g: named(g) for g in self.generators}


_QB = "/(q - q^-1)"
_C1 = "(a^-1*q - a*q^-1)/(q - q^-1)"
_C2 = "(a*q - a^-1*q^-1)/(q - q^-1)"
_Q3 = "(q^2 + 1 + q^-2)"

PRESENTATIONS: Dict[str, PresentationSpec] = {p.id: p for p in [
    PresentationSpec("chevalley", ("e", "f", "k", "k_inv"), [
        ("k*k^-1", "1"), ("k^-1*k", "1"),
        ("k*e*k^-1", "q^2*e"), ("k*f*k^-1", "q^-2*f"),
        ("e*f - f*e", "(k - k^-1)/(q - q^-1)"),
    ], "generators e, f, k^(+-1)"),
    PresentationSpec("equitable", ("x", "y", "y_inv", "z"), [
        ("y*y^-1", "1"), ("y^-1*y", "1"),
        (f"(q*x*y - q^-1*y*x){_QB}", "1"),
        (f"(q*y*z - q^-1*z*y){_QB}", "1"),
        (f"(q*z*x - q^-1*x*z){_QB}", "1"),
    ], "generators x, y^(+-1), z"),
    PresentationSpec("mod-chevalley", ("nu_x", "y", "y_inv", "nu_z"), [
        ("y*y^-1", "1"), ("y^-1*y", "1"),
        ("y*nu_x*y^-1", "q^-2*nu_x"), ("y*nu_z*y^-1", "q^2*nu_z"),
        (f"(q*nu_z*nu_x - q^-1*nu_x*nu_z){_QB}", "1 - y^2"),
    ], "generators nu_x, y^(+-1), nu_z"),
    PresentationSpec("invariant", ("A", "y", "y_inv"), [
        ("y*y^-1", "1"), ("y^-1*y", "1"),
        ("y^2*A - (q^2 + q^-2)*y*A*y + A*y^2", "-(a + a^-1)*(q - q^-1)^2*y"),
        (f"A*y^2*A + A*y*A*y + y*A*y*A - {_Q3}*y*A^2*y + (a + a^-1)*(q - q^-1)^2*(A*y + y*A)",
         "(q^2 - q^-2)^2*y^2 + (a*q - a^-1*q^-1)*(a*q^-1 - a^-1*q)*(q - q^-1)^2"),
    ], "generators A, y^(+-1)"),
    PresentationSpec("uvee-xyz", ("x", "y_inv", "z"), [
        (f"(q*y^-1*x - q^-1*x*y^-1){_QB}", "y^-2"),
        (f"(q*z*y^-1 - q^-1*y^-1*z){_QB}", "y^-2"),
        (f"(q*z*x - q^-1*x*z){_QB}", "1"),
    ], "subalgebra generators x, y^-1, z"),
    PresentationSpec("uvee-XyZ", ("X", "y_inv", "Z"), [
        (f"(q*y^-1*X - q^-1*X*y^-1){_QB}", "y^-2"),
        (f"(q*Z*y^-1 - q^-1*y^-1*Z){_QB}", "y^-2"),
        (f"(q*Z*X - q^-1*X*Z){_QB}", "1"),
    ], "subalgebra generators X, y^-1, Z"),
    PresentationSpec("uvee-xXA", ("x", "X", "A"), [
        (f"(q*A*x - q^-1*x*A){_QB}", "a^-1*x^2 + a"),
        (f"(q*A*X - q^-1*X*A){_QB}", "a*X^2 + a^-1"),
        (f"a^-1*x^2 - {_C1}*x*X - {_C2}*X*x + a*X^2", "0"),
    ], "subalgebra generators x, X, A"),
    PresentationSpec("uvee-zZA", ("z", "Z", "A"), [
        (f"(q*z*A - q^-1*A*z){_QB}", "a*z^2 + a^-1"),
        (f"(q*Z*A - q^-1*A*Z){_QB}", "a^-1*Z^2 + a"),
        (f"a*z^2 - {_C1}*z*Z - {_C2}*Z*z + a^-1*Z^2", "0"),
    ], "subalgebra generators z, Z, A"),
]}

PRESENTATION_IDS = tuple(PRESENTATIONS)


def relation_residual(lhs: str, rhs: str, env: Optional[Mapping[str, NormalElement]] = None,
                      anti: bool = False) -> NormalElement:
    """embed(lhs) - embed(rhs); with ``anti`` every product is reversed."""
    if anti:
        return _eval_reversed(lhs, env) - _eval_reversed(rhs, env)
    return evaluate(lhs, env) - evaluate(rhs, env)


def _eval_reversed(text: str, env) -> NormalElement:
    """Evaluate with the opposite multiplication (for anti-maps)."""
    from .expr import _Evaluator, _default_env, parse_expr

    lookup = _default_env() if env is None else env.__getitem__

    class _Reversed(_Evaluator):
        def ev(self, node):
            if node[0] == "mul":
                lhs, rhs = self.ev(node[1]), self.ev(node[2])
                if isinstance(lhs, NormalElement) and isinstance(rhs, NormalElement):
                    return rhs * lhs
                return rhs * lhs if isinstance(lhs, NormalElement) else lhs * rhs
            return super().ev(node)

    ev = _Reversed(text, lookup, EQUITABLE)
    return ev.promote(ev.ev(parse_expr(text)))


def _status_record(pid: str, idx: int, residual: NormalElement) -> dict:
    return {
        "id": pid,
        "relation-index": idx,
        "status": "pass" if residual.is_zero() else "fail",
        "residual": format_element(residual),
    }


def verify_presentation(p, env: Optional[Mapping[str, NormalElement]] = None,
                        anti: bool = False) -> List[dict]:
    """One report record per relation of ``p`` (a PresentationSpec or its id)."""
    if isinstance(p, str):
        p = PRESENTATIONS[p]
    if env is None:
        env = p.embedding()
    return [_status_record(p.id, i, relation_residual(lhs, rhs, env, anti))
            for i, (lhs, rhs) in enumerate(p.relations)]


def report_passes(report: Sequence[dict]) -> bool:
    return all(r["status"] == "pass" for r in report)


# ---------------------------------------------------------------------------
# isomorphisms between presentations
# ---------------------------------------------------------------------------

@dataclass
class Isomorphism:
    """Maps between two presentations, each given on generators by expressions."""
    id: str
    source: str
    target: str
    forward: Dict[str, str]   # source generator -> expression in target generators
    backward: Dict[str, str]  # target generator -> expression in source generators

    def _images(self, exprs: Mapping[str, str], env: Mapping[str, NormalElement]):
        return {g: evaluate(e, env) for g, e in exprs.items()}

    def forward_images(self) -> Dict[str, NormalElement]:
        return self._images(self.forward, PRESENTATIONS[self.target].embedding())

    def backward_images(self) -> Dict[str, NormalElement]:
        return self._images(self.backward, PRESENTATIONS[self.source].embedding())

    def check(self) -> dict:
        """Homomorphism checks for both maps plus round trips on generators.

        The relations of each presentation are evaluated with the generators
        replaced by their images.  The round trip substitutes the backward
        images into the forward expressions (and vice versa) and compares
        with the original generators.
        """
        src, dst = PRESENTATIONS[self.source], PRESENTATIONS[self.target]
        fwd, bwd = self.forward_images(), self.backward_images()
        fwd_hom = verify_presentation(src, env=fwd)
        bwd_hom = verify_presentation(dst, env=bwd)
        round_src = {g: (evaluate(self.forward[g], bwd) - src.embedding()[g]).is_zero()
                     for g in self.forward}
        round_dst = {g: (evaluate(self.backward[g], fwd) - dst.embedding()[g]).is_zero()
                     for g in self.backward}
        ok = (report_passes(fwd_hom) and report_passes(bwd_hom)
              and all(round_src.values()) and all(round_dst.values()))
        return {"id": self.id, "forward_hom": fwd_hom, "backward_hom": bwd_hom,
                "round_trip_source": round_src, "round_trip_target": round_dst, "ok": ok}


ISOMORPHISMS: Dict[str, Isomorphism] = {i.id: i for i in [
    Isomorphism("equitable-chevalley", "equitable", "chevalley",
                {"x": "k^-1 - k^-1*e*q*(q - q^-1)", "y": "k", "y_inv": "k^-1",
                 "z": "k^-1 + f*(q - q^-1)"},
                {"e": "(1 - y*x)*q^-1*(q - q^-1)^-1", "k": "y", "k_inv": "y^-1",
                 "f": "(z - y^-1)*(q - q^-1)^-1"}),
    Isomorphism("mod-chevalley-chevalley", "mod-chevalley", "chevalley",
                {"nu_x": "-q*(q - q^-1)*k*f", "y": "k", "y_inv": "k^-1",
                 "nu_z": "(q - q^-1)*e"},
                {"e": "(q - q^-1)^-1*nu_z", "k": "y", "k_inv": "y^-1",
                 "f": "-q^-1*(q - q^-1)^-1*y^-1*nu_x"}),
    Isomorphism("invariant-mod-chevalley", "invariant", "mod-chevalley",
                {"A": "a*(1 - q*nu_x)*y^-1 + a^-1*(1 - q^-1*nu_z)*y^-1", "y": "y",
                 "y_inv": "y^-1"},
                {"nu_x": "a^-1*(a + a^-1)/(q + q^-1) - a^-1*(q*A*y - q^-1*y*A)/(q^2 - q^-2)",
                 "y": "y", "y_inv": "y^-1",
                 "nu_z": "a*(a + a^-1)/(q + q^-1) - a*(q*y*A - q^-1*A*y)/(q^2 - q^-2)"}),
    Isomorphism("uvee-XyZ-xyz", "uvee-XyZ", "uvee-xyz",
                {"X": "a^-2*x + (1 - a^-2)*y^-1", "y_inv": "y^-1", "Z": "a^2*z + (1 - a^2)*y^-1"},
                {"x": "a^2*X + (1 - a^2)*y^-1", "y_inv": "y^-1", "z": "a^-2*Z + (1 - a^-2)*y^-1"}),
    Isomorphism("uvee-xXA-xyz", "uvee-xXA", "uvee-xyz",
                {"x": "x", "X": "a^-2*x + (1 - a^-2)*y^-1", "A": "a^-1*x + a*z"},
                {"x": "x", "y_inv": "(a*X - a^-1*x)/(a - a^-1)", "z": "a^-1*A - a^-2*x"}),
    Isomorphism("uvee-zZA-xyz", "uvee-zZA", "uvee-xyz",
                {"z": "z", "Z": "a^2*z + (1 - a^2)*y^-1", "A": "a^-1*x + a*z"},
                {"x": "a*A - a^2*z", "y_inv": "(a*z - a^-1*Z)/(a - a^-1)", "z": "z"}),
]}


def sigma_restriction_check() -> List[dict]:
    """sigma maps the relations in x, y^-1, z onto those in X, y^-1, Z."""
    sigma = get_morphism("sigma")
    env = {g: sigma(named(g)) for g in ("x", "y_inv", "z")}
    return verify_presentation("uvee-xyz", env=env)


# ---------------------------------------------------------------------------
# the subspace S spanned by x, y^-1, z
# ---------------------------------------------------------------------------

S_BASES = {
    "i": ("x", "y_inv", "z"),
    "ii": ("X", "y_inv", "Z"),
    "iii": ("x", "X", "A"),
    "iv": ("z", "Z", "A"),
}


def _m(rows) -> FMatrix:
    return FMatrix([[rf_parse(v) for v in r] for r in rows])


# Column j holds the coordinates of the j-th target vector in the source basis.
_TRANSITIONS = {
    ("i", "ii"): [["a^-2", "0", "0"], ["1 - a^-2", "1", "1 - a^2"], ["0", "0", "a^2"]],
    ("ii", "i"): [["a^2", "0", "0"], ["1 - a^2", "1", "1 - a^-2"], ["0", "0", "a^-2"]],
    ("i", "iii"): [["1", "a^-2", "a^-1"], ["0", "1 - a^-2", "0"], ["0", "0", "a"]],
    ("iii", "i"): [["1", "a^-1/(a^-1 - a)", "-a^-2"], ["0", "a/(a - a^-1)", "0"], ["0", "0", "a^-1"]],
    ("i", "iv"): [["0", "0", "a^-1"], ["0", "1 - a^2", "0"], ["1", "a^2", "a"]],
    ("iv", "i"): [["-a^2", "a/(a - a^-1)", "1"], ["0", "a^-1/(a^-1 - a)", "0"], ["a", "0", "0"]],
}

# Column j holds the coordinates of m(j-th basis vector).
_S_MAPS = {
    ("tau", "i"): [["0", "0", "1"], ["0", "1", "0"], ["1", "0", "0"]],
    ("dagger", "i"): [["0", "0", "a^-2"], ["1 - a^2", "1", "1 - a^-2"], ["a^2", "0", "0"]],
    ("tau", "ii"): [["0", "0", "a^4"], ["a^-2*(a^2 - a^-2)", "1", "a^2*(a^-2 - a^2)"], ["a^-4", "0", "0"]],
    ("dagger", "ii"): [["0", "0", "a^2"], ["1 - a^-2", "1", "1 - a^2"], ["a^-2", "0", "0"]],
    ("tau", "iii"): [["-a^-2", "-a^-3*(a + a^-1)", "a^-1*(a^2 - a^-2)"], ["0", "1", "0"],
                     ["a^-1", "a^-3", "a^-2"]],
    ("dagger", "iii"): [["0", "-a^-2", "0"], ["-a^2", "0", "0"], ["a", "a^-1", "1"]],
    ("tau", "iv"): [["-a^2", "-a^3*(a + a^-1)", "a*(a^-2 - a^2)"], ["0", "1", "0"],
                    ["a", "a^3", "a^2"]],
    ("dagger", "iv"): [["0", "-a^2", "0"], ["-a^-2", "0", "0"], ["a^-1", "a", "1"]],
}


@dataclass
class SMatrix:
    matrix: FMatrix
    source_basis: str
    target_basis: str

    def __mul__(self, other: "SMatrix") -> "SMatrix":
        return SMatrix(self.matrix * other.matrix, self.source_basis, other.target_basis)


def _basis_tag(tag: str) -> str:
    t = tag.strip().strip("()").lower()
    if t not in S_BASES:
        raise KeyError(f"unknown basis of S: {tag!r}")
    return t


def transition(src: str, dst: str) -> SMatrix:
    key = (_basis_tag(src), _basis_tag(dst))
    if key not in _TRANSITIONS:
        raise KeyError(f"no documented transition matrix from {src} to {dst}")
    return SMatrix(_m(_TRANSITIONS[key]), key[0], key[1])


def s_matrix_of(m: str, basis: str) -> SMatrix:
    key = (m, _basis_tag(basis))
    if key not in _S_MAPS:
        raise KeyError(f"no documented matrix for {m} on basis {basis}")
    return SMatrix(_m(_S_MAPS[key]), key[1], key[1])


def s_basis(tag: str) -> List[NormalElement]:
    return [named(g) for g in S_BASES[_basis_tag(tag)]]


def combine(vectors: Sequence[NormalElement], coords: Sequence[RationalFunction]) -> NormalElement:
    out = NormalElement.zero()
    for v, c in zip(vectors, coords):
        if c:
            out = out + c * v
    return out


def transition_consistent(src: str, dst: str) -> bool:
    """Each target basis vector equals the matrix column expanded in the source basis."""
    t = transition(src, dst).matrix
    sb, db = s_basis(src), s_basis(dst)
    return all(combine(sb, col) == d for col, d in zip(t.columns(), db))


def s_matrix_consistent(m: str, basis: str) -> bool:
    """apply_morphism on each basis vector matches the representing matrix."""
    mat = s_matrix_of(m, basis).matrix
    b = s_basis(basis)
    morph = get_morphism(m)
    return all(combine(b, col) == morph(v) for col, v in zip(mat.columns(), b))
