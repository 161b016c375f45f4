"""The symplectic group Sp(2n, K), its big cell, and the coisotropic pairs
it acts on.

Block convention: g = [[A, B], [C, D]] with n x n blocks, preserving the
form J = [[0, I], [-I, 0]] via  tg J g = J.  Row pairs (X Y) in F^{n x 2n}
with X tY = Y tX and full rank carry the right action
(X, Y) . g = (X A + Y C,  X B + Y D); they are the boundary data every
Siegel-domain membership question is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import NotInU0, Singular
from .linalg import KMatrix, det, inverse, rank_over_F, solve_right
from .padic import FieldParams, PadicScalar


def standard_form(params: FieldParams, n: int) -> KMatrix:
    """J = [[0, I_n], [-I_n, 0]]."""
    z, i = KMatrix.zeros(params, n, n), KMatrix.identity(params, n)
    return KMatrix.block2(z, i, -i, z)


def blocks(g: KMatrix):
    """(A, B, C, D) for a 2n x 2n matrix."""
    if g.nrows != g.ncols or g.nrows % 2:
        raise ValueError("expected a 2n x 2n matrix")
    n = g.nrows // 2
    return (g.block(0, 0, n, n), g.block(0, n, n, n),
            g.block(n, 0, n, n), g.block(n, n, n, n))


def symplectic_report(g: KMatrix) -> dict:
    """Per-relation breakdown of the two equivalent block criteria.

    Row form:    tA D - tC B = I,  tA C = tC A,  tB D = tD B
    Column form: D tA - C tB = I,  D tC = C tD,  B tA = A tB
    """
    A, B, C, D = blocks(g)
    i = KMatrix.identity(g.params, A.nrows)
    return {
        "tA.D - tC.B = I": (A.T @ D - C.T @ B) == i,
        "tA.C symmetric": (A.T @ C).is_symmetric(),
        "tB.D symmetric": (B.T @ D).is_symmetric(),
        "D.tA - C.tB = I": (D @ A.T - C @ B.T) == i,
        "D.tC symmetric": (D @ C.T).is_symmetric(),
        "B.tA symmetric": (B @ A.T).is_symmetric(),
    }


def is_symplectic(g: KMatrix) -> bool:
    """tg J g = J."""
    J = standard_form(g.params, g.nrows // 2)
    return (g.T @ J @ g) == J


@dataclass(frozen=True)
class PPair:
    """A row pair (X Y), X, Y n x n over F, with X tY = Y tX and full rank n.

    These are the coisotropic frames the Siegel-domain inequalities quantify
    over; the integral primitive ones are the lattice points among them.
    """

    X: KMatrix
    Y: KMatrix

    @property
    def n(self) -> int:
        return self.X.nrows

    @property
    def params(self) -> FieldParams:
        return self.X.params

    def as_matrix(self) -> KMatrix:
        return self.X.hstack(self.Y)

    def is_coisotropic(self) -> bool:
        return (self.X @ self.Y.T).is_symmetric()

    def is_valid(self) -> bool:
        return self.is_coisotropic() and rank_over_F(self.as_matrix()) == self.n

    def is_integral(self) -> bool:
        for r in self.as_matrix().rows:
            for x in r:
                v = x.valuation()
                if v is not None and v < 0:
                    return False
        return True

    def is_primitive(self) -> bool:
        """Integral with a unit n x n minor (a basis of a direct summand)."""
        if not self.is_integral():
            return False
        W = self.as_matrix()
        n = self.n
        for cols in combinations(range(2 * n), n):
            v = det(W.submatrix(range(n), cols)).valuation()
            if v == 0:
                return True
        return False

    def act(self, g: KMatrix) -> "PPair":
        """(X, Y) . g = (X A + Y C, X B + Y D)."""
        A, B, C, D = blocks(g)
        return PPair(self.X @ A + self.Y @ C, self.X @ B + self.Y @ D)

    def __eq__(self, other):
        if not isinstance(other, PPair):
            return NotImplemented
        return self.X == other.X and self.Y == other.Y

    __hash__ = None


def scalar_pair(params: FieldParams, x, y) -> PPair:
    """n = 1 helper: the pair (x, y)."""
    return PPair(KMatrix(params, [[x]]), KMatrix(params, [[y]]))


# ---------------------------------------------------------------- big cell

def u0_decompose(g: KMatrix):
    """Factor g through the big cell: returns (z1, h, z2) with

        g = [[I, z1], [0, I]] @ [[h, 0], [0, th^-1]] @ [[0, -I], [I, z2]],

    z1 = A C^-1, h = tC^-1, z2 = C^-1 D.  Raises NotInU0 when C is singular
    at working precision (g outside the open cell).
    """
    A, B, C, D = blocks(g)
    if det(C).is_zero():
        raise NotInU0("lower-left block is singular at working precision")
    c_inv = inverse(C)
    return (A @ c_inv, inverse(C.T), c_inv @ D)


def u0_assemble(z1: KMatrix, h: KMatrix, z2: KMatrix) -> KMatrix:
    params, n = z1.params, z1.nrows
    i, z = KMatrix.identity(params, n), KMatrix.zeros(params, n, n)
    upper = KMatrix.block2(i, z1, z, i)
    torus = KMatrix.block2(h, z, z, inverse(h.T))
    lower = KMatrix.block2(z, -i, i, z2)
    return upper @ torus @ lower


# ---------------------------------------------------------------- completion

def gram_schmidt_complete(pair: PPair) -> KMatrix:
    """Complete a coisotropic pair to g in Sp(2n) whose bottom rows are (X Y).

    Symplectic Gram-Schmidt: solve V (J tW) = I for a dual frame V, then
    cancel the self-pairing defect S = V J tV with a lower-triangular
    correction (no division by 2, so p = 2 is fine).
    """
    params, n = pair.params, pair.n
    W = pair.as_matrix()                       # n x 2n
    J = standard_form(params, n)
    M = J @ W.T                                # 2n x n
    # pick n independent rows of M (deterministic, minimal valuation first)
    E = M.T                                    # n x 2n
    cols = _pivot_columns(E)
    E_j = E.submatrix(range(n), cols)
    N_j = solve_right(E_j, KMatrix.identity(params, n))   # E_j N_j = I
    rows = [[N_j[cols.index(i), j] if i in cols else PadicScalar.zero(params)
             for j in range(n)] for i in range(2 * n)]
    V = KMatrix(params, rows).T                # V M = I
    S = V @ J @ V.T                            # antisymmetric defect
    c_rows = [[(-S[i, j]) if i > j else PadicScalar.zero(params)
               for j in range(n)] for i in range(n)]
    U = V - KMatrix(params, c_rows) @ W
    g = KMatrix(params, list(U.rows) + list(W.rows))
    if not is_symplectic(g):
        raise Singular("completion failed to certify at working precision")
    return g


def _pivot_columns(E: KMatrix):
    a = [list(r) for r in E.rows]
    n, m = E.nrows, E.ncols
    cols, row = [], 0
    for col in range(m):
        best, best_v = None, None
        for i in range(row, n):
            v = a[i][col].valuation()
            if v is not None and (best_v is None or v < best_v):
                best, best_v = i, v
        if best is None:
            continue
        a[row], a[best] = a[best], a[row]
        inv_p = a[row][col].inverse()
        for i in range(row + 1, n):
            if not a[i][col].is_zero():
                f = a[i][col] * inv_p
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        cols.append(col)
        row += 1
        if row == n:
            return cols
    raise Singular("pair is not full rank at working precision")


# ---------------------------------------------------------------- action upstairs

def mobius(g: KMatrix, Z: KMatrix) -> KMatrix:
    """g . Z = (A Z + B)(C Z + D)^-1."""
    A, B, C, D = blocks(g)
    return (A @ Z + B) @ inverse(C @ Z + D)


def automorphy(g: KMatrix, Z: KMatrix) -> KMatrix:
    """j(g, Z) = C Z + D."""
    _, _, C, D = blocks(g)
    return C @ Z + D


def sym_basis(n: int):
    """Lexicographic basis index pairs of symmetric n x n matrices."""
    return [(i, j) for i in range(n) for j in range(i, n)]


def _basis_matrix(params: FieldParams, n: int, i: int, j: int) -> KMatrix:
    rows = [[0] * n for _ in range(n)]
    rows[i][j] = 1
    rows[j][i] = 1
    return KMatrix(params, rows)


def sym_coords(S: KMatrix) -> KMatrix:
    """Column vector of a symmetric matrix in the sym_basis ordering."""
    return KMatrix(S.params, [[S[i, j]] for (i, j) in sym_basis(S.nrows)])


def sigma1_matrix(h: KMatrix) -> KMatrix:
    """Matrix of S |-> h S th on symmetric matrices (lex basis).

    This is the first fundamental representation of GL_n on the holomorphic
    cotangent coordinates dZ_ij; for n = 1 it is multiplication by h^2.
    """
    params, n = h.params, h.nrows
    basis = sym_basis(n)
    cols = []
    for (i, j) in basis:
        T = h @ _basis_matrix(params, n, i, j) @ h.T
        cols.append([T[k, l] for (k, l) in basis])
    return KMatrix(params, [[cols[c][r] for c in range(len(basis))]
                            for r in range(len(basis))])


def compound_matrix(M: KMatrix, r: int) -> KMatrix:
    """r-th compound: minors det M[rows, cols] over r-subsets (lex order)."""
    n = M.nrows
    subs = list(combinations(range(n), r))
    return KMatrix(M.params,
                   [[det(M.submatrix(rs, cs)) for cs in subs] for rs in subs])


def sigma_r_matrix(h: KMatrix, r: int) -> KMatrix:
    """The weight-r piece: r-th compound of sigma1.  The top value
    r = n(n+1)/2 is the determinant character det(sigma1(h))."""
    return compound_matrix(sigma1_matrix(h), r)
