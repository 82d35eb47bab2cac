import pytest
import sympy

from uqsl2.coeff_field import ONE, ZERO, rf_parse
from uqsl2.linalg import FMatrix, SingularMatrix, contains, intersect, nullspace

S = rf_parse
M = FMatrix([[S("q"), S("1")], [S("a"), S("q^-1")]])


def test_inverse_round_trip():
    assert (M * M.inverse()).is_identity()
    assert (M ** -2 * M ** 2).is_identity()


def test_inverse_matches_sympy():
    q, a = sympy.symbols("q a")
    inv = sympy.Matrix([[q, 1], [a, 1 / q]]).inv()
    ours = M.inverse()
    for i in range(2):
        for j in range(2):
            assert sympy.simplify(inv[i, j] - sympy.sympify(str(ours[i, j]).replace("^", "**"))) == 0


def test_singular():
    with pytest.raises(SingularMatrix):
        FMatrix([[S("q"), S("1")], [S("q^2"), S("q")]]).inverse()


def test_nullspace_and_rank():
    m = FMatrix([[ONE, S("a"), ZERO], [S("q"), S("q*a"), ZERO]])
    assert m.rank() == 1
    ns = nullspace(m)
    assert len(ns) == 2
    for v in ns:
        assert not any(m.apply(v))


def test_intersect():
    e1, e2, e3 = [tuple(ONE if i == j else ZERO for i in range(3)) for j in range(3)]
    u = [e1, e2]
    w = [tuple(x + y for x, y in zip(e2, e3)), e1]
    cap = intersect(u, w, 3)
    assert len(cap) == 1 and contains(cap, e1)


def test_records():
    assert FMatrix.from_records(M.to_records()) == M
    assert M.to_records() == {"n": 2, "rows": [["q", "1"], ["a", "q^-1"]]}


def test_scalar_detection():
    assert FMatrix.identity(3).scale(S("q")).is_scalar() == S("q")
    assert M.is_scalar() is None
