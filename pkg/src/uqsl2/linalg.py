"""Dense exact matrices over Q(q, a) and the subspace operations built on them.

Elimination always pivots on the first nonzero entry, so results are
deterministic.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple

from .coeff_field import ONE, ZERO, RationalFunction, rf_format, rf_parse

Vector = Tuple[RationalFunction, ...]


class SingularMatrix(ArithmeticError):
    pass


def _rf(v) -> RationalFunction:
    return RationalFunction.coerce(v)


class FMatrix:
    """Immutable n x m matrix with RationalFunction entries."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        self.rows: Tuple[Vector, ...] = tuple(tuple(_rf(v) for v in row) for row in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @property
    def n(self) -> int:
        if self.nrows != self.ncols:
            raise ValueError("matrix is not square")
        return self.nrows

    @classmethod
    def identity(cls, n: int) -> "FMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: Optional[int] = None) -> "FMatrix":
        m = n if m is None else m
        return cls([[ZERO] * m for _ in range(n)])

    @classmethod
    def diag(cls, entries: Sequence) -> "FMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "FMatrix":
        if not cols:
            raise ValueError("no columns")
        return cls([[col[i] for col in cols] for i in range(len(cols[0]))])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, FMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "FMatrix(" + repr([[rf_format(v) for v in r] for r in self.rows]) + ")"

    def columns(self) -> List[Vector]:
        return [tuple(self.rows[i][j] for i in range(self.nrows)) for j in range(self.ncols)]

    def transpose(self) -> "FMatrix":
        return FMatrix(self.columns())

    def __add__(self, other: "FMatrix") -> "FMatrix":
        return FMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "FMatrix") -> "FMatrix":
        return FMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return FMatrix([[-a for a in r] for r in self.rows])

    def scale(self, c) -> "FMatrix":
        c = _rf(c)
        return FMatrix([[c * a for a in r] for r in self.rows])

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if not isinstance(other, FMatrix):
            return self.scale(other)
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = other.columns()
        out = []
        for r in self.rows:
            row = []
            for col in cols:
                acc = ZERO
                for a, b in zip(r, col):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return FMatrix(out)

    def apply(self, v: Sequence) -> Vector:
        out = []
        for r in self.rows:
            acc = ZERO
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __pow__(self, k: int) -> "FMatrix":
        if k < 0:
            return self.inverse() ** (-k)
        result = FMatrix.identity(self.n)
        for _ in range(k):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return all(not v for r in self.rows for v in r)

    def is_identity(self) -> bool:
        return self == FMatrix.identity(self.n)

    def is_scalar(self) -> Optional[RationalFunction]:
        """The scalar c if self = c*I, else None."""
        c = self.rows[0][0] if self.nrows else ZERO
        return c if self == FMatrix.identity(self.n).scale(c) else None

    def inverse(self) -> "FMatrix":
        n = self.n
        aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(self.rows)]
        red, pivots = _rref(aug, n)
        if len(pivots) < n:
            raise SingularMatrix("matrix is singular")
        return FMatrix([row[n:] for row in red[:n]])

    def rank(self) -> int:
        return len(_rref([list(r) for r in self.rows], self.ncols)[1])

    def nullspace(self) -> List[Vector]:
        return nullspace(self)

    def to_records(self) -> dict:
        return {"n": self.nrows, "rows": [[rf_format(v) for v in r] for r in self.rows]}

    @classmethod
    def from_records(cls, rec: dict) -> "FMatrix":
        return cls([[rf_parse(v) for v in r] for r in rec["rows"]])

    def format(self) -> str:
        return "\n".join("[" + ", ".join(rf_format(v) for v in r) + "]" for r in self.rows)


def _rref(rows: List[List[RationalFunction]], ncols: int):
    """Reduced row echelon form on the first ``ncols`` columns (in place)."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [v * inv if v else v for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def nullspace(m: FMatrix) -> List[Vector]:
    ncols = m.ncols
    rows, pivots = _rref([list(r) for r in m.rows], ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(tuple(v))
    return basis


def column_basis(vectors: Sequence[Sequence], n: int) -> List[Vector]:
    """A basis (subset, first-come) of the span of the given vectors."""
    if not vectors:
        return []
    m = FMatrix.from_columns(vectors)
    _, pivots = _rref([list(r) for r in m.rows], len(vectors))
    return [tuple(_rf(x) for x in vectors[c]) for c in pivots]


def rank_of(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return FMatrix.from_columns(vectors).rank()


def intersect(u: Sequence[Vector], w: Sequence[Vector], n: int) -> List[Vector]:
    """Basis of span(u) cap span(w); inputs are assumed independent."""
    if not u or not w:
        return []
    m = FMatrix.from_columns(list(u) + [tuple(-x for x in v) for v in w])
    out = []
    for sol in nullspace(m):
        vec = [ZERO] * n
        for coef, col in zip(sol[:len(u)], u):
            if coef:
                for i in range(n):
                    vec[i] = vec[i] + coef * col[i]
        out.append(tuple(vec))
    return column_basis(out, n)


def contains(space: Sequence[Vector], v: Sequence) -> bool:
    """Is v in span(space)?"""
    if all(not x for x in v):
        return True
    return rank_of(list(space) + [tuple(v)]) == rank_of(space)


def kernel(m: FMatrix) -> List[Vector]:
    return nullspace(m)


def image(m: FMatrix) -> List[Vector]:
    return column_basis(m.columns(), m.nrows)
