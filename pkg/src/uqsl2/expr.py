"""Element expressions: the scalar grammar plus noncommuting atoms.

Atoms are x y z X Z A e f k nu_x nu_y nu_z Lambda.  Juxtaposition and ``*``
are the (noncommutative) product; ``/`` divides by scalars only; negative
powers are allowed for y, k and scalars.  An environment maps atom names to
elements; ``y^-n`` looks up ``y_inv`` and ``k^-n`` looks up ``k_inv``, so an
environment without ``y`` can still express y^-1 (used for the subalgebra
generated by x, y^-1, z).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Mapping, Optional, Union

from .coeff_field import A as A_SCALAR
from .coeff_field import Q as Q_SCALAR
from .coeff_field import ParseError, Parser, RationalFunction
from .ncalgebra import EQUITABLE, NormalElement, convert

ELEMENT_ATOMS = ("nu_x", "nu_y", "nu_z", "Lambda", "x", "y", "z", "X", "Z", "A", "e", "f", "k")
ATOMS = ELEMENT_ATOMS + ("q", "a")
INVERTIBLE = {"y": "y_inv", "k": "k_inv"}

Value = Union[RationalFunction, NormalElement]


class ExprError(ParseError):
    """A well-formed expression that cannot be evaluated."""


@lru_cache(maxsize=4096)
def parse_expr(text: str):
    return Parser(text, ATOMS).parse()


def _default_env():
    from .presentations import named
    return named


class _Evaluator:
    def __init__(self, text: str, lookup: Callable[[str], NormalElement], basis: str):
        self.text = text
        self.lookup = lookup
        self.basis = basis

    def fail(self, msg: str, pos: int = 0):
        raise ExprError(msg, pos, self.text)

    def atom(self, name: str, pos: int) -> NormalElement:
        try:
            v = self.lookup(name)
        except KeyError:
            self.fail(f"generator {name!r} is not available here", pos)
        if v.basis != self.basis:
            v = convert(v, self.basis)
        return v

    def promote(self, v: Value) -> NormalElement:
        if isinstance(v, NormalElement):
            return v
        return NormalElement.scalar(v, self.basis)

    def ev(self, node) -> Value:
        kind = node[0]
        if kind == "int":
            return RationalFunction.from_int(node[1])
        if kind == "name":
            name, pos = node[1], node[2]
            if name == "q":
                return Q_SCALAR
            if name == "a":
                return A_SCALAR
            return self.atom(name, pos)
        if kind == "neg":
            return -self.ev(node[1])
        if kind in ("add", "sub"):
            lhs, rhs = self.ev(node[1]), self.ev(node[2])
            if isinstance(lhs, RationalFunction) and isinstance(rhs, RationalFunction):
                return lhs + rhs if kind == "add" else lhs - rhs
            lhs, rhs = self.promote(lhs), self.promote(rhs)
            return lhs + rhs if kind == "add" else lhs - rhs
        if kind == "mul":
            lhs, rhs = self.ev(node[1]), self.ev(node[2])
            if isinstance(lhs, NormalElement) and isinstance(rhs, NormalElement):
                return lhs * rhs
            if isinstance(lhs, NormalElement):
                return rhs * lhs
            return lhs * rhs
        if kind == "div":
            lhs, rhs = self.ev(node[1]), self.ev(node[2])
            if isinstance(rhs, NormalElement):
                self.fail("division by an algebra element", self._pos(node[2]))
            return lhs / rhs
        if kind == "pow":
            base, n = node[1], node[2]
            if base[0] == "name" and base[1] in INVERTIBLE and n < 0:
                return self.atom(INVERTIBLE[base[1]], base[2]) ** (-n)
            v = self.ev(base)
            if isinstance(v, RationalFunction):
                return v ** n
            if n < 0:
                self.fail("negative power of a non-invertible element", self._pos(base))
            return v ** n
        raise AssertionError(kind)

    def _pos(self, node) -> int:
        while node[0] != "name":
            if node[0] == "int" or len(node) < 2 or not isinstance(node[1], tuple):
                return 0
            node = node[1]
        return node[2]


def evaluate(text: str, env: Optional[Mapping[str, NormalElement]] = None,
             basis: str = EQUITABLE) -> NormalElement:
    """Evaluate an element expression to a normal form in ``basis``.

    ``env`` overrides the atom values; by default atoms are the named
    elements of U_q(sl2).
    """
    if env is None:
        lookup = _default_env()
    else:
        lookup = env.__getitem__
    ev = _Evaluator(text, lookup, basis)
    value = ev.ev(parse_expr(text))
    return ev.promote(value)
