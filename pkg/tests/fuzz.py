"""Seeded random elements shared by the property tests."""

import random

from uqsl2.coeff_field import RationalFunction
from uqsl2.ncalgebra import EQUITABLE, NormalElement


def random_coeff(rng: random.Random) -> RationalFunction:
    k = rng.random()
    if k < 0.4:
        return RationalFunction.from_int(rng.choice([1, -1, 2, -3, 5]))
    if k < 0.8:
        return RationalFunction.laurent(rng.randint(-2, 2), rng.randint(-2, 2), rng.choice([1, -1, 2]))
    return RationalFunction.laurent(rng.randint(-2, 2), 0) + RationalFunction.laurent(0, rng.randint(-2, 2))


def random_element(rng: random.Random, basis: str = EQUITABLE, cap: int = 3,
                   max_terms: int = 4, s_min=None) -> NormalElement:
    """At most ``max_terms`` monomials with 0 <= r, t <= cap and |s| <= cap."""
    lo = -cap if s_min is None else s_min
    coeffs = {}
    for _ in range(rng.randint(1, max_terms)):
        m = (rng.randint(0, cap), rng.randint(lo, cap), rng.randint(0, cap))
        coeffs[m] = random_coeff(rng)
    return NormalElement(basis, coeffs)


def random_elements(seed: int, count: int, **kw):
    rng = random.Random(seed)
    return [random_element(rng, **kw) for _ in range(count)]
