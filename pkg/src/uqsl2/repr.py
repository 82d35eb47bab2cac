"""Finite-dimensional matrix representations over Q(q, a).

Covers the standard weight module, evaluation of algebra elements as
matrices, the K/B/A/psi construction attached to the pair (A-action,
y-action), split decompositions, a tridiagonal-pair checker and the
Fitting decomposition with respect to y^-1.

Presentation tags for a MatrixRep: "chevalley" (e, f, k, k_inv),
"equitable" (x, y, y_inv, z) and "uvee" (x, y_inv, z).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .coeff_field import ONE, ZERO, Q, RationalFunction, qbracket, rf_parse
from .expr import INVERTIBLE, parse_expr
from .linalg import FMatrix, SingularMatrix, column_basis, contains, intersect, nullspace, rank_of
from .ncalgebra import CHEVALLEY, EQUITABLE, NormalElement, convert
from .presentations import PRESENTATIONS

A_VAR = rf_parse("a")

TAG_GENERATORS = {
    "chevalley": ("e", "f", "k", "k_inv"),
    "equitable": ("x", "y", "y_inv", "z"),
    "uvee": ("x", "y_inv", "z"),
}
TAG_PRESENTATION = {"chevalley": "chevalley", "equitable": "equitable", "uvee": "uvee-xyz"}


class RepError(ValueError):
    pass


class NotExtendable(RepError):
    pass


# ---------------------------------------------------------------------------
# evaluating relation text on matrices
# ---------------------------------------------------------------------------

def eval_matrix_expr(text: str, env: Mapping[str, FMatrix], n: int) -> FMatrix:
    """Evaluate an element expression with atoms bound to n x n matrices."""

    def atom(name):
        if name == "q":
            return Q
        if name == "a":
            return A_VAR
        if name not in env:
            raise RepError(f"generator {name!r} has no matrix here")
        return env[name]

    def promote(v):
        return v if isinstance(v, FMatrix) else FMatrix.identity(n).scale(v)

    def ev(node):
        kind = node[0]
        if kind == "int":
            return RationalFunction.from_int(node[1])
        if kind == "name":
            return atom(node[1])
        if kind == "neg":
            return -ev(node[1])
        if kind in ("add", "sub"):
            lhs, rhs = ev(node[1]), ev(node[2])
            if not isinstance(lhs, FMatrix) and not isinstance(rhs, FMatrix):
                return lhs + rhs if kind == "add" else lhs - rhs
            lhs, rhs = promote(lhs), promote(rhs)
            return lhs + rhs if kind == "add" else lhs - rhs
        if kind == "mul":
            lhs, rhs = ev(node[1]), ev(node[2])
            if isinstance(lhs, FMatrix) and isinstance(rhs, FMatrix):
                return lhs * rhs
            if isinstance(lhs, FMatrix):
                return lhs.scale(rhs)
            if isinstance(rhs, FMatrix):
                return rhs.scale(lhs)
            return lhs * rhs
        if kind == "div":
            lhs, rhs = ev(node[1]), ev(node[2])
            if isinstance(rhs, FMatrix):
                raise RepError("division by a matrix")
            inv = rhs.inv()
            return lhs.scale(inv) if isinstance(lhs, FMatrix) else lhs * inv
        if kind == "pow":
            base, k = node[1], node[2]
            if base[0] == "name" and base[1] in INVERTIBLE and k < 0:
                name = INVERTIBLE[base[1]]
                if name in env:
                    return env[name] ** (-k)
                return atom(base[1]) ** k
            return ev(base) ** k
        raise AssertionError(kind)

    return promote(ev(parse_expr(text)))


def check_relations(presentation: str, env: Mapping[str, FMatrix], n: int) -> List[Tuple[int, bool]]:
    """(index, holds) for each defining relation evaluated on matrices."""
    out = []
    for i, (lhs, rhs) in enumerate(PRESENTATIONS[presentation].relations):
        diff = eval_matrix_expr(lhs, env, n) - eval_matrix_expr(rhs, env, n)
        out.append((i, diff.is_zero()))
    return out


# ---------------------------------------------------------------------------
# MatrixRep
# ---------------------------------------------------------------------------

class MatrixRep:
    """Generator images on an n-dimensional space; relations are checked on construction."""

    def __init__(self, tag: str, images: Mapping[str, FMatrix], check: bool = True):
        if tag not in TAG_GENERATORS:
            raise RepError(f"unknown presentation tag {tag!r}")
        missing = [g for g in TAG_GENERATORS[tag] if g not in images]
        if missing:
            raise RepError(f"missing generator images {missing}")
        self.tag = tag
        self.images: Dict[str, FMatrix] = {g: images[g] for g in TAG_GENERATORS[tag]}
        self.n = next(iter(self.images.values())).n
        self._powers: Dict[Tuple[str, int], FMatrix] = {}
        if check:
            bad = [i for i, ok in self.relation_report() if not ok]
            if bad:
                raise RepError(f"relations {bad} of {TAG_PRESENTATION[tag]} fail")

    @property
    def presentation(self) -> str:
        return TAG_PRESENTATION[self.tag]

    def relation_report(self) -> List[Tuple[int, bool]]:
        return check_relations(self.presentation, self.images, self.n)

    def __getitem__(self, name: str) -> FMatrix:
        return self.images[name]

    def _gen(self, name: str) -> FMatrix:
        if name in self.images:
            return self.images[name]
        inverse = {"y": "y_inv", "k": "k_inv"}.get(name)
        if inverse and inverse in self.images:
            key = (name, -1)
            if key not in self._powers:
                try:
                    self._powers[key] = self.images[inverse].inverse()
                except SingularMatrix:
                    raise RepError(f"{name} is not available: {inverse} is singular") from None
            return self._powers[key]
        raise RepError(f"{name} is not available on a {self.tag} rep")

    def power(self, name: str, k: int) -> FMatrix:
        key = (name, k)
        if key not in self._powers:
            self._powers[key] = FMatrix.identity(self.n) if k == 0 else self.power(name, k - 1) * self._gen(name)
        return self._powers[key]

    def to_records(self) -> dict:
        return {"presentation": self.tag, "n": self.n,
                "images": {g: m.to_records() for g, m in sorted(self.images.items())}}

    @classmethod
    def from_records(cls, rec: dict) -> "MatrixRep":
        return cls(rec["presentation"], {g: FMatrix.from_records(m) for g, m in rec["images"].items()})


def rep_eval(rep: MatrixRep, u: NormalElement) -> FMatrix:
    """The matrix by which u acts; u is converted to the rep's basis first."""
    n = rep.n
    out = FMatrix.zeros(n)
    if rep.tag == "chevalley":
        u = convert(u, CHEVALLEY) if u.basis != CHEVALLEY else u
        names = ("e", "k", "k_inv", "f")
    else:
        u = convert(u, EQUITABLE) if u.basis != EQUITABLE else u
        names = ("x", "y", "y_inv", "z")
    for (r, s, t), c in u.coeffs.items():
        m = rep.power(names[0], r)
        m = m * (rep.power(names[1], s) if s >= 0 else rep.power(names[2], -s))
        m = m * rep.power(names[3], t)
        out = out + m.scale(c)
    return out


def standard_module(d: int) -> MatrixRep:
    """(d+1)-dimensional weight module: k v_i = q^(d-2i) v_i, e v_i = [i] v_(i-1), f v_i = [d-i] v_(i+1)."""
    if d < 1:
        raise RepError("d must be at least 1")
    n = d + 1
    e = [[ZERO] * n for _ in range(n)]
    f = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        if i >= 1:
            e[i - 1][i] = qbracket(i)
        if i < d:
            f[i + 1][i] = qbracket(d - i)
    k = FMatrix.diag([Q ** (d - 2 * i) for i in range(n)])
    kinv = FMatrix.diag([Q ** (2 * i - d) for i in range(n)])
    return MatrixRep("chevalley", {"e": FMatrix(e), "f": FMatrix(f), "k": k, "k_inv": kinv})


def to_equitable(rep: MatrixRep) -> MatrixRep:
    if rep.tag == "equitable":
        return rep
    if rep.tag == "uvee":
        return extend_to_uq(rep)
    from .presentations import named
    return MatrixRep("equitable", {g: rep_eval(rep, named(g)) for g in TAG_GENERATORS["equitable"]})


def restrict_to_uvee(rep: MatrixRep) -> MatrixRep:
    if rep.tag == "uvee":
        return rep
    from .presentations import named
    return MatrixRep("uvee", {g: rep_eval(rep, named(g)) for g in TAG_GENERATORS["uvee"]})


def extend_to_uq(rep: MatrixRep) -> MatrixRep:
    """Add y as the inverse of y^-1; refused when y^-1 has a nilpotent part."""
    if rep.tag != "uvee":
        return to_equitable(rep)
    try:
        y = rep["y_inv"].inverse()
    except SingularMatrix:
        _, nil = fitting_decomposition(rep)
        raise NotExtendable(f"y^-1 is singular: nilpotent part has dimension {len(nil)}") from None
    return MatrixRep("equitable", {"x": rep["x"], "y": y, "y_inv": rep["y_inv"], "z": rep["z"]})


def direct_sum(r1: MatrixRep, r2: MatrixRep) -> MatrixRep:
    if r1.tag != r2.tag:
        raise RepError("direct sum needs matching presentation tags")
    n1, n2 = r1.n, r2.n
    imgs = {}
    for g in TAG_GENERATORS[r1.tag]:
        rows = [list(row) + [ZERO] * n2 for row in r1[g].rows]
        rows += [[ZERO] * n1 + list(row) for row in r2[g].rows]
        imgs[g] = FMatrix(rows)
    return MatrixRep(r1.tag, imgs)


def scalar_module(x=1, y_inv=0, z=1) -> MatrixRep:
    """One-dimensional U^vee rep; the relations force xz = 1 when y^-1 = 0."""
    m = lambda v: FMatrix([[RationalFunction.coerce(v)]])
    return MatrixRep("uvee", {"x": m(x), "y_inv": m(y_inv), "z": m(z)})


# ---------------------------------------------------------------------------
# K, B, A and psi
# ---------------------------------------------------------------------------

def build_KBA(rep: MatrixRep) -> Tuple[FMatrix, FMatrix, FMatrix]:
    """K, B, Amat = actions of z, Z, A; the z, Z, A relations are checked."""
    from .presentations import named
    K, B, Amat = (rep_eval(rep, named(g)) for g in ("z", "Z", "A"))
    bad = [i for i, ok in check_relations("uvee-zZA", {"z": K, "Z": B, "A": Amat}, rep.n) if not ok]
    if bad:
        raise RepError(f"z, Z, A relations {bad} fail")
    return K, B, Amat


def psi(K: FMatrix, B: FMatrix) -> FMatrix:
    """q^-1 (I - B K^-1)(a I - a^-1 B K^-1)^-1."""
    n = K.n
    I = FMatrix.identity(n)
    BKi = B * K.inverse()
    return (I - BKi).scale(Q.inv()) * (I.scale(A_VAR) - BKi.scale(A_VAR.inv())).inverse()


def first_module(K: FMatrix, B: FMatrix, Amat: FMatrix) -> MatrixRep:
    """U^vee rep with z, Z, A acting as K, B, Amat."""
    a = A_VAR
    y_inv = (K.scale(a) - B.scale(a.inv())).scale((a - a.inv()).inv())
    x = Amat.scale(a) - K.scale(a * a)
    return MatrixRep("uvee", {"x": x, "y_inv": y_inv, "z": K})


def second_module(K: FMatrix, B: FMatrix, Amat: FMatrix) -> MatrixRep:
    """U^vee rep with x, X, A acting as K^-1, B^-1, Amat."""
    a = A_VAR
    Ki, Bi = K.inverse(), B.inverse()
    bad = [i for i, ok in check_relations("uvee-xXA", {"x": Ki, "X": Bi, "A": Amat}, K.n) if not ok]
    if bad:
        raise RepError(f"x, X, A relations {bad} fail")
    y_inv = (Ki.scale(a.inv()) - Bi.scale(a)).scale((a.inv() - a).inv())
    z = Amat.scale(a.inv()) - Ki.scale(a ** -2)
    return MatrixRep("uvee", {"x": Ki, "y_inv": y_inv, "z": z})


def casimir_forms(Amat: FMatrix, K: FMatrix, B: FMatrix, psi_m: FMatrix) -> List[FMatrix]:
    a, q = A_VAR, Q
    Ki, Bi = K.inverse(), B.inverse()
    mk = Amat - K.scale(a) - Ki.scale(a.inv())
    mb = Amat - B.scale(a.inv()) - Bi.scale(a)
    return [
        mk * psi_m + K.scale(q) + Ki.scale(q.inv()),
        psi_m * mk + K.scale(q.inv()) + Ki.scale(q),
        mb * psi_m + B.scale(q) + Bi.scale(q.inv()),
        psi_m * mb + B.scale(q.inv()) + Bi.scale(q),
    ]


def eigenprojection(M: FMatrix, eigenvalues: Sequence[RationalFunction], i: int) -> FMatrix:
    """Lagrange projection onto the eigenvalues[i] eigenspace of a diagonalizable M."""
    n = M.n
    I = FMatrix.identity(n)
    P = I
    for j, th in enumerate(eigenvalues):
        if j != i:
            P = P * (M - I.scale(th)).scale((eigenvalues[i] - th).inv())
    return P


def psi_lowers(psi_m: FMatrix, K: FMatrix, d: int) -> bool:
    """psi P_i = P_(i-1) psi P_i for the K-eigenvalues q^(d-2i) (P_(-1) = 0)."""
    ev = [Q ** (d - 2 * i) for i in range(d + 1)]
    if not annihilates(K, ev):
        return False
    P = [eigenprojection(K, ev, i) for i in range(d + 1)]
    for i in range(d + 1):
        lhs = psi_m * P[i]
        rhs = P[i - 1] * psi_m * P[i] if i > 0 else FMatrix.zeros(K.n)
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# eigenspaces, split decompositions, tridiagonal pairs
# ---------------------------------------------------------------------------

@dataclass
class TDParams:
    d: int
    theta: List[RationalFunction]
    theta_star: List[RationalFunction]
    a: Optional[RationalFunction] = None
    b: Optional[RationalFunction] = None

    def __post_init__(self):
        for name, seq in (("theta", self.theta), ("theta_star", self.theta_star)):
            if len(seq) != self.d + 1:
                raise ValueError(f"{name} must have d+1 entries")
            if len(set(seq)) != len(seq):
                raise ValueError(f"{name} entries must be distinct")

    @classmethod
    def q_racah(cls, d: int, a=None, b=None) -> "TDParams":
        """theta_i = a q^(d-2i) + a^-1 q^(2i-d); theta*_i likewise in b, or q^(d-2i) without b."""
        a = A_VAR if a is None else RationalFunction.coerce(a)
        theta = [a * Q ** (d - 2 * i) + a.inv() * Q ** (2 * i - d) for i in range(d + 1)]
        if b is None:
            star = [Q ** (d - 2 * i) for i in range(d + 1)]
        else:
            b = RationalFunction.coerce(b)
            star = [b * Q ** (d - 2 * i) + b.inv() * Q ** (2 * i - d) for i in range(d + 1)]
        return cls(d, theta, star, a, b)


@dataclass
class SubspaceBasis:
    n: int
    vectors: List[tuple] = field(default_factory=list)

    def __post_init__(self):
        if rank_of(self.vectors) != len(self.vectors):
            raise ValueError("vectors are not independent")

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def contains(self, v) -> bool:
        return contains(self.vectors, v)

    def maps_into(self, M: FMatrix, other: "SubspaceBasis") -> bool:
        return all(other.contains(M.apply(v)) for v in self.vectors)


def annihilates(M: FMatrix, eigenvalues: Sequence[RationalFunction]) -> bool:
    """prod (M - theta I) == 0."""
    I = FMatrix.identity(M.n)
    P = I
    for th in eigenvalues:
        P = P * (M - I.scale(th))
    return P.is_zero()


def eigenspaces(M: FMatrix, eigenvalues: Sequence[RationalFunction]) -> List[SubspaceBasis]:
    I = FMatrix.identity(M.n)
    return [SubspaceBasis(M.n, nullspace(M - I.scale(th))) for th in eigenvalues]


def _sum(spaces: Sequence[SubspaceBasis], n: int) -> List[tuple]:
    vecs = [v for s in spaces for v in s.vectors]
    return column_basis(vecs, n) if vecs else []


def split_decomposition(Amat: FMatrix, Astar: FMatrix, params: TDParams,
                        flip: str = "plain") -> List[SubspaceBasis]:
    """U_i = (V*_0+...+V*_i) cap (V_i+...+V_d); with flip="down" use V_0+...+V_(d-i)."""
    if flip not in ("plain", "down"):
        raise ValueError("flip must be 'plain' or 'down'")
    n, d = Amat.n, params.d
    if not annihilates(Amat, params.theta) or not annihilates(Astar, params.theta_star):
        raise RepError("eigenvalues do not annihilate the input (mismatch or not diagonalizable)")
    V = eigenspaces(Amat, params.theta)
    Vs = eigenspaces(Astar, params.theta_star)
    out = []
    for i in range(d + 1):
        left = _sum(Vs[: i + 1], n)
        right = _sum(V[i:], n) if flip == "plain" else _sum(V[: d - i + 1], n)
        out.append(SubspaceBasis(n, intersect(left, right, n)))
    return out


def split_inclusions(U: Sequence[SubspaceBasis], Amat: FMatrix, Astar: FMatrix,
                     params: TDParams, flip: str = "plain") -> bool:
    """(A - theta_i)U_i in U_(i+1) and (A* - theta*_i)U_i in U_(i-1); theta reversed for "down"."""
    n, d = Amat.n, params.d
    I = FMatrix.identity(n)
    zero = SubspaceBasis(n, [])
    theta = params.theta if flip == "plain" else params.theta[::-1]
    for i, Ui in enumerate(U):
        up = U[i + 1] if i < d else zero
        down = U[i - 1] if i > 0 else zero
        if not Ui.maps_into(Amat - I.scale(theta[i]), up):
            return False
        if not Ui.maps_into(Astar - I.scale(params.theta_star[i]), down):
            return False
    return True


def _tridiagonal_on(M: FMatrix, spaces: Sequence[SubspaceBasis], n: int) -> bool:
    for i, Vi in enumerate(spaces):
        nbr = SubspaceBasis(n, _sum(spaces[max(i - 1, 0): i + 2], n))
        if not Vi.maps_into(M, nbr):
            return False
    return True


def invariant_closure(v, maps: Sequence[FMatrix], n: int) -> List[tuple]:
    basis = column_basis([v], n)
    frontier = list(basis)
    while frontier:
        new = []
        for w in frontier:
            for M in maps:
                u = M.apply(w)
                if not contains(basis, u):
                    basis.append(u)
                    new.append(u)
        frontier = new
    return basis


def algebra_dimension(maps: Sequence[FMatrix]) -> int:
    """Dimension of the unital matrix algebra generated by ``maps``."""
    n = maps[0].n
    flat = lambda M: tuple(v for row in M.rows for v in row)
    words = [FMatrix.identity(n)]
    span = [flat(words[0])]
    frontier = list(words)
    while frontier:
        new = []
        for W in frontier:
            for M in maps:
                P = W * M
                fp = flat(P)
                if not contains(span, fp):
                    span.append(fp)
                    new.append(P)
        frontier = new
    return len(span)


def is_tridiagonal_pair(Amat: FMatrix, Astar: FMatrix, params: TDParams) -> dict:
    """Check the four defining conditions; every finding goes into the report."""
    n = Amat.n
    report = {}
    diag_a = annihilates(Amat, params.theta)
    diag_s = annihilates(Astar, params.theta_star)
    V = [s for s in eigenspaces(Amat, params.theta) if s.dim]
    Vs = [s for s in eigenspaces(Astar, params.theta_star) if s.dim]
    full = sum(s.dim for s in V) == n and sum(s.dim for s in Vs) == n
    report["i"] = diag_a and diag_s and full
    # reversing an ordering preserves tridiagonality, so one check covers both
    report["ii"] = bool(V) and (_tridiagonal_on(Astar, V, n) or _tridiagonal_on(Astar, V[::-1], n))
    report["iii"] = bool(Vs) and (_tridiagonal_on(Amat, Vs, n) or _tridiagonal_on(Amat, Vs[::-1], n))
    maps = [Amat, Astar]
    unit = [tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n)]
    span_ok = all(len(invariant_closure(v, maps, n)) == n for v in unit)
    report["iv"] = span_ok and algebra_dimension(maps) == n * n
    report["ok"] = all(report[k] for k in ("i", "ii", "iii", "iv"))
    return report


def fitting_decomposition(rep: MatrixRep) -> Tuple[SubspaceBasis, SubspaceBasis]:
    """(V_inv, V_nil) = image and kernel of (y^-1)^n."""
    n = rep.n
    if "y_inv" not in rep.images:
        raise RepError("rep has no y^-1 image")
    P = rep["y_inv"] ** n
    return SubspaceBasis(n, column_basis(P.columns(), n)), SubspaceBasis(n, nullspace(P))


def invariant_under(space: SubspaceBasis, maps: Sequence[FMatrix]) -> bool:
    return all(space.maps_into(M, space) for M in maps)


def split_agreement(K: FMatrix, B: FMatrix, U: Sequence[SubspaceBasis],
                    U_down: Sequence[SubspaceBasis], d: int) -> dict:
    """Does K act on U_i (B on U_i^down) as q^(d-2i)?  Both orderings are reported.

    Nothing is asserted here: this only records what the matrices do.
    """
    def scalar_on(M, space, lam):
        I = FMatrix.identity(M.n)
        return all(not any((M - I.scale(lam)).apply(v)) for v in space.vectors)

    out = {}
    for label, M, spaces in (("K", K, U), ("B", B, U_down)):
        out[label] = {
            "q^(d-2i)": all(scalar_on(M, s, Q ** (d - 2 * i)) for i, s in enumerate(spaces)),
            "q^(2i-d)": all(scalar_on(M, s, Q ** (2 * i - d)) for i, s in enumerate(spaces)),
        }
    return out
