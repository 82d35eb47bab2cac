import pytest

from fuzz import random_element, random_elements
from uqsl2.coeff_field import ONE, rf_parse
from uqsl2.expr import evaluate
from uqsl2.ncalgebra import (CHEVALLEY, CHEVALLEY_RULES, EQUITABLE, EQUITABLE_RULES, BasisMismatch,
                             NormalElement, convert, format_element, from_records, generator,
                             grade_split, membership, nc_linear, nc_multiply, nc_qbracket, rule_soundness,
                             to_records)
from uqsl2.presentations import named

x, y, yi, z = (generator(EQUITABLE, g) for g in ("x", "y", "y_inv", "z"))
e, k, ki, f = (generator(CHEVALLEY, g) for g in ("e", "k", "k_inv", "f"))
one = NormalElement.one()
mono = NormalElement.monomial
S = rf_parse


def test_zx():
    u = nc_multiply(z, x)
    assert u.coeffs == {(1, 0, 1): S("q^-2"), (0, 0, 0): S("1 - q^-2")}
    assert format_element(u) == "(1 - q^-2)*1 + q^-2*x*z"


def test_small_products():
    assert nc_multiply(y, yi) == one
    assert nc_multiply(x, x) == mono(EQUITABLE, (2, 0, 0))
    assert nc_multiply(y, x).coeffs == {(1, 1, 0): S("q^2"), (0, 0, 0): S("1 - q^2")}


def test_yx_satisfies_relation():
    # oracle: the solved product put back into the defining relation
    yx = nc_multiply(y, x)
    xy = mono(EQUITABLE, (1, 1, 0))
    assert (S("q") * xy - S("q^-1") * yx) / S("q - q^-1") == one


def _word(letters, basis):
    names = {"y-": "y_inv", "k-": "k_inv"}
    out = NormalElement.one(basis)
    for letter in letters:
        out = nc_multiply(out, generator(basis, names.get(letter, letter)))
    return out


@pytest.mark.parametrize("rule", EQUITABLE_RULES + CHEVALLEY_RULES, ids=lambda r: r[0])
def test_engine_implements_rule(rule):
    name, lhs, rhs, _ = rule
    basis = EQUITABLE if rule in EQUITABLE_RULES else CHEVALLEY
    expected = NormalElement.zero(basis)
    for c, w in rhs:
        expected = expected + S(c) * _word(w, basis)
    assert _word(lhs, basis) == expected


def test_rule_soundness_counts():
    res = rule_soundness()
    assert len(EQUITABLE_RULES) == 7 and len(CHEVALLEY_RULES) == 5
    assert all(ok for _, ok in res)


def test_rule_soundness_detects_bad_rule():
    name, lhs, rhs, rel = EQUITABLE_RULES[2]
    bad = (name, lhs, [("q^3", ("x", "y")), ("1 - q^2", ())], rel)
    assert rule_soundness([bad]) == [(name, False)]


def test_linear_ops():
    assert nc_linear("add", x, nc_linear("scalar_mul", -1, x)).is_zero()
    assert nc_linear("scalar_mul", 0, z).is_zero()
    lam = nc_linear("sub",
                    nc_linear("add", nc_linear("add", S("q") * x, S("q^-1") * y), S("q") * z),
                    nc_linear("scalar_mul", S("q"), nc_multiply(x, nc_multiply(y, z))))
    assert lam == named("Lambda")
    with pytest.raises(BasisMismatch):
        nc_linear("add", x, e)


def test_qbracket():
    assert nc_qbracket(x, y) == one
    assert nc_qbracket(x, x) == mono(EQUITABLE, (2, 0, 0))
    assert nc_qbracket(named("nu_z"), named("nu_x")) == one - mono(EQUITABLE, (0, 2, 0))
    with pytest.raises(BasisMismatch):
        nc_qbracket(x, e)


def test_basis_mismatch():
    with pytest.raises(BasisMismatch):
        nc_multiply(x, e)


def test_convert_x():
    # x = k^-1 - q(q - q^-1) k^-1 e, and k^-1 e = q^-2 e k^-1 gives -(1 - q^-2) on e k^-1
    u = convert(x, CHEVALLEY)
    by_hand = ki - S("q*(q - q^-1)") * nc_multiply(ki, e)
    assert u == by_hand
    assert u.coeffs == {(0, -1, 0): ONE, (1, -1, 0): S("-(1 - q^-2)")}


def test_convert_e():
    u = convert(e, EQUITABLE)
    assert u.coeffs == {(0, 0, 0): S("q/(q - q^-1)"), (1, 1, 0): S("-q/(q - q^-1)")}
    assert u == named("nu_z") / S("q - q^-1")


def test_convert_one():
    assert convert(one, CHEVALLEY) == NormalElement.one(CHEVALLEY)
    assert convert(NormalElement.one(CHEVALLEY), EQUITABLE) == one


def test_membership_examples():
    assert membership(named("nu_x"), "Uvee") is False
    assert membership(named("Lambda"), "UprimeOdd") is True
    assert membership(mono(EQUITABLE, (2, 0, 1)), "UveeCapUprime") is True
    assert membership(y, "uvee") is False and membership(yi, "uvee") is True
    with pytest.raises(BasisMismatch):
        membership(e, "even")
    with pytest.raises(ValueError):
        membership(x, "nowhere")


def test_grade_split():
    xy = mono(EQUITABLE, (1, 1, 0))
    assert grade_split(x + xy) == (xy, x)
    lam = named("Lambda")
    assert grade_split(lam) == (NormalElement.zero(), lam)
    zero = NormalElement.zero()
    assert grade_split(zero) == (zero, zero)


def test_records_round_trip():
    for u in random_elements(3, 20):
        recs = to_records(u)
        assert [(r["r"], r["s"], r["t"]) for r in recs] == sorted(u.coeffs)
        assert from_records(recs) == u


def test_format_parse_fixed_point():
    for u in random_elements(4, 20):
        assert evaluate(format_element(u)) == u
    for u in random_elements(5, 10, basis=CHEVALLEY):
        assert evaluate(format_element(u), basis=CHEVALLEY) == u


# -- properties (acceptance runs the full-size versions) ---------------------

def test_associativity_sample():
    els = random_elements(11, 60)
    for i in range(0, 60, 3):
        u, v, w = els[i:i + 3]
        assert nc_multiply(nc_multiply(u, v), w) == nc_multiply(u, nc_multiply(v, w))


def test_associativity_chevalley_sample():
    els = random_elements(12, 30, basis=CHEVALLEY)
    for i in range(0, 30, 3):
        u, v, w = els[i:i + 3]
        assert (u * v) * w == u * (v * w)


def test_unit_laws():
    for u in random_elements(13, 20):
        assert one * u == u and u * one == u


def test_convert_ring_map_sample():
    els = random_elements(14, 20)
    for u, v in zip(els[::2], els[1::2]):
        assert convert(u * v, CHEVALLEY) == convert(u, CHEVALLEY) * convert(v, CHEVALLEY)
        assert convert(u + v, CHEVALLEY) == convert(u, CHEVALLEY) + convert(v, CHEVALLEY)
        assert convert(convert(u, CHEVALLEY), EQUITABLE) == u


def test_parity_multiplicative():
    import random
    rng = random.Random(15)
    for _ in range(20):
        u, v = grade_split(random_element(rng))[rng.randint(0, 1)], grade_split(random_element(rng))[rng.randint(0, 1)]
        if u.is_zero() or v.is_zero():
            continue
        pu = 0 if membership(u, "even") else 1
        pv = 0 if membership(v, "even") else 1
        assert membership(u * v, "odd" if (pu + pv) % 2 else "even")
