"""Exact dense linear algebra over K on the small matrices this package uses.

Everything here is sized for rank <= 4 workhorses (symplectic blocks, Siegel
points, symmetric-square actions): determinants expand by Leibniz up to 4x4
so precision tracking stays transparent, with fraction-free Bareiss above
that.  Inverses go through the adjugate -- the same closed formulas the
classical identities are stated in -- and report Singular when the
determinant is zero at working precision.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .errors import ParameterMismatch, Singular, Unsupported
from .padic import FieldParams, PadicScalar


class KMatrix:
    """Immutable matrix with PadicScalar entries."""

    __slots__ = ("params", "rows")

    def __init__(self, params: FieldParams, rows):
        self.params = params
        coerced = []
        width = None
        for r in rows:
            row = []
            for x in r:
                if isinstance(x, PadicScalar):
                    if x.params != params:
                        raise ParameterMismatch("entry params differ from matrix params")
                    row.append(x)
                elif isinstance(x, int):
                    row.append(PadicScalar.from_int(params, x))
                elif isinstance(x, Fraction):
                    row.append(PadicScalar.from_fraction(params, x))
                else:
                    raise TypeError(f"cannot coerce {type(x).__name__} to PadicScalar")
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ValueError("ragged rows")
            coerced.append(tuple(row))
        self.rows = tuple(coerced)

    # ---------------- constructors ----------------

    @classmethod
    def identity(cls, params: FieldParams, n: int) -> "KMatrix":
        return cls(params, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, params: FieldParams, r: int, c: int) -> "KMatrix":
        return cls(params, [[0] * c for _ in range(r)])

    @classmethod
    def diag(cls, params: FieldParams, entries) -> "KMatrix":
        entries = list(entries)
        n = len(entries)
        return cls(params, [[entries[i] if i == j else 0 for j in range(n)]
                            for i in range(n)])

    @staticmethod
    def block2(A: "KMatrix", B: "KMatrix", C: "KMatrix", D: "KMatrix") -> "KMatrix":
        """[[A, B], [C, D]]"""
        rows = [list(ra) + list(rb) for ra, rb in zip(A.rows, B.rows)]
        rows += [list(rc) + list(rd) for rc, rd in zip(C.rows, D.rows)]
        return KMatrix(A.params, rows)

    # ---------------- shape / access ----------------

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def submatrix(self, row_idx, col_idx) -> "KMatrix":
        return KMatrix(self.params,
                       [[self.rows[i][j] for j in col_idx] for i in row_idx])

    def block(self, i0: int, j0: int, r: int, c: int) -> "KMatrix":
        return self.submatrix(range(i0, i0 + r), range(j0, j0 + c))

    def hstack(self, other: "KMatrix") -> "KMatrix":
        return KMatrix(self.params,
                       [list(a) + list(b) for a, b in zip(self.rows, other.rows)])

    @property
    def T(self) -> "KMatrix":
        return KMatrix(self.params,
                       [[self.rows[i][j] for i in range(self.nrows)]
                        for j in range(self.ncols)])

    # ---------------- arithmetic ----------------

    def __add__(self, other: "KMatrix") -> "KMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return KMatrix(self.params,
                       [[a + b for a, b in zip(ra, rb)]
                        for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "KMatrix") -> "KMatrix":
        return self + (-other)

    def __neg__(self) -> "KMatrix":
        return KMatrix(self.params, [[-a for a in r] for r in self.rows])

    def __matmul__(self, other: "KMatrix") -> "KMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in product")
        ot = other.T.rows
        return KMatrix(self.params,
                       [[_dot(row, col) for col in ot] for row in self.rows])

    def __mul__(self, scalar) -> "KMatrix":
        return KMatrix(self.params, [[a * scalar for a in r] for r in self.rows])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, KMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return all(a == b for ra, rb in zip(self.rows, other.rows)
                   for a, b in zip(ra, rb))

    __hash__ = None

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.rows for a in r)

    def is_symmetric(self) -> bool:
        return self == self.T

    def trace(self) -> PadicScalar:
        acc = PadicScalar.zero(self.params)
        for i in range(min(self.shape)):
            acc = acc + self.rows[i][i]
        return acc

    def map(self, fn) -> "KMatrix":
        return KMatrix(self.params, [[fn(a) for a in r] for r in self.rows])

    def __repr__(self):
        body = "; ".join("[" + ", ".join(repr(a) for a in r) + "]" for r in self.rows)
        return f"KMatrix({body})"


def _dot(u, w):
    it = iter(zip(u, w))
    a, b = next(it)
    acc = a * b
    for a, b in it:
        acc = acc + a * b
    return acc


def det(M: KMatrix) -> PadicScalar:
    """Determinant: Leibniz expansion up to 4x4, fraction-free Bareiss above."""
    n = M.nrows
    if n != M.ncols:
        raise ValueError("determinant of non-square matrix")
    if n == 0:
        return PadicScalar.one(M.params)
    if n <= 4:
        acc = PadicScalar.zero(M.params)
        for perm in permutations(range(n)):
            sign = _parity(perm)
            term = M.rows[0][perm[0]]
            for i in range(1, n):
                term = term * M.rows[i][perm[i]]
            acc = acc + (term if sign > 0 else -term)
        return acc
    return _bareiss(M)


def _parity(perm) -> int:
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv % 2 else 1


def _bareiss(M: KMatrix) -> PadicScalar:
    n = M.nrows
    a = [list(r) for r in M.rows]
    sign = 1
    prev = PadicScalar.one(M.params)
    for k in range(n - 1):
        piv = _pick_pivot(a, k, k, n)
        if piv is None:
            return PadicScalar.zero(M.params)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def _pick_pivot(a, col: int, row0: int, n: int):
    """Row index >= row0 whose entry in `col` has minimal valuation; None if
    the whole column is zero at working precision."""
    best, best_v = None, None
    for i in range(row0, n):
        v = a[i][col].valuation()
        if v is None:
            continue
        if best_v is None or v < best_v:
            best, best_v = i, v
    return best


def adjugate(M: KMatrix) -> KMatrix:
    n = M.nrows
    if n == 1:
        return KMatrix.identity(M.params, 1)
    idx = list(range(n))
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = M.submatrix([r for r in idx if r != j],
                                [c for c in idx if c != i])
            m = det(minor)
            row.append(m if (i + j) % 2 == 0 else -m)
        rows.append(row)
    return KMatrix(M.params, rows)


def inverse(M: KMatrix) -> KMatrix:
    """Adjugate over determinant; Singular if det is zero at precision."""
    d = det(M)
    if d.is_zero():
        raise Singular("matrix is singular at working precision")
    return adjugate(M) * d.inverse()


def solve_right(M: KMatrix, B: KMatrix) -> KMatrix:
    """The solution X of M X = B for square invertible M (Gaussian elimination
    with minimal-valuation pivoting)."""
    n = M.nrows
    if n != M.ncols or B.nrows != n:
        raise ValueError("shape mismatch in solve")
    a = [list(rm) + list(rb) for rm, rb in zip(M.rows, B.rows)]
    w = n + B.ncols
    for k in range(n):
        piv = _pick_pivot(a, k, k, n)
        if piv is None:
            raise Singular("matrix is singular at working precision")
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
        inv_p = a[k][k].inverse()
        a[k] = [x * inv_p for x in a[k]]
        for i in range(n):
            if i != k and not a[i][k].is_zero():
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return KMatrix(M.params, [r[n:w] for r in a])


def rank_over_F(M: KMatrix) -> int:
    """Rank of a matrix with entries in the base field F = Q_p.

    Row echelon with minimal-valuation pivoting; a column that is zero at
    working precision is treated as zero (matching equality-at-precision
    semantics).  Entries certified to lie outside F are rejected.
    """
    for r in M.rows:
        for x in r:
            if x.not_in_base_field_certified():
                raise Unsupported("rank_over_F needs entries in the base field")
    a = [list(r) for r in M.rows]
    n, m = M.nrows, M.ncols
    rank, row = 0, 0
    for col in range(m):
        if row >= n:
            break
        piv = _pick_pivot(a, col, row, n)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv_p = a[row][col].inverse()
        for i in range(row + 1, n):
            if not a[i][col].is_zero():
                f = a[i][col] * inv_p
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        rank += 1
        row += 1
    return rank
