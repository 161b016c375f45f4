"""The p-adic Siegel upper half-space and its affinoid filtration.

Points are symmetric n x n matrices Z over K.  For an integral primitive
coisotropic pair (X, Y) the basic inequality compares

    |det(X Z + Y)|   against   |Z|^n |p|^(n m),   |Z| = max_ij {1, |Z_ij|}.

The m-th shell Sigma(m) collects the Z where no pair wins, i.e. where
v(det(X Z + Y)) <= n (m e - lam(Z)) for every pair, lam(Z) being the largest
negative entry valuation (pi-units).  Membership is decided by scanning a
finite representative set: pairs congruent modulo p^(nm+1) (after unimodular
left scaling) give the same verdict, because perturbing the entries by
p^(nm+1) moves v(det) past the threshold by at least e + lam > 0.  The
representative sets are P^1(Z/p^(m+1)) for n = 1 and the Lagrangian
Grassmannian over Z/p^(2m+1) for n = 2, enumerated by affine charts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import PrecisionLoss, RamificationInsufficient, Unsupported
from .linalg import KMatrix, det
from .padic import FieldParams, PadicScalar
from .symplectic import PPair, mobius


def lam_pi_units(Z: KMatrix) -> int:
    """max(0, -v(Z_ij)) over entries: |Z| = p^(lam/e)."""
    worst = 0
    for row in Z.rows:
        for x in row:
            v = x.valuation()
            if v is not None and -v > worst:
                worst = -v
    return worst


def norm_exp(Z: KMatrix) -> Fraction:
    """log_p |Z| as an exact Fraction."""
    return Fraction(lam_pi_units(Z), Z.params.e)


# ---------------------------------------------------------------- rep sets

@dataclass(frozen=True)
class RepSet:
    """Representatives of integral primitive pairs modulo p^(n*level+1)
    and unimodular scaling; sufficient to decide Sigma(level) membership."""

    params: FieldParams
    n: int
    level: int
    pairs: tuple

    def __len__(self):
        return len(self.pairs)


def rep_count(p: int, n: int, m: int) -> int:
    """Size of the level-m representative set."""
    if n == 1:
        return (p + 1) * p ** m
    if n == 2:
        return (p + 1) * (p ** 2 + 1) * p ** (6 * m)
    raise Unsupported("representative sets are implemented for n <= 2")


def enumerate_reps(params: FieldParams, n: int, m: int) -> RepSet:
    """Deterministic enumeration of the level-m representative pairs.

    n = 1: the unimodular rows (1, y), y mod p^(m+1), then (x, 1) with
    x = 0 mod p; this is P^1(Z/p^(m+1)) and always contains (0, 1).

    n = 2: the four affine charts of the Lagrangian Grassmannian LG(2) over
    R = Z/p^(2m+1), in the fixed order det Y, det X, minor(1,4), minor(2,3);
    each chart contributes the frames whose *first* unit minor in that order
    is its own, so every GL_2(R)-orbit appears exactly once.  The chart
    forms are Lagrangian identically over Z, so the integer lifts are exact
    integral primitive pairs.
    """
    if m < 0:
        raise ValueError("level must be >= 0")
    p = params.p
    if n == 1:
        q = p ** (m + 1)
        pairs = [_pair1(params, 1, y) for y in range(q)]
        pairs += [_pair1(params, x, 1) for x in range(0, q, p)]
        return RepSet(params, 1, m, tuple(pairs))
    if n == 2:
        q = p ** (2 * m + 1)
        pairs = []
        for z in _symmetric_reps(q):
            pairs.append(_keep_if_first(params, z, _ident(), chart=0, q=q))
        for z in _symmetric_reps(q):
            pairs.append(_keep_if_first(params, _ident(), z, chart=1, q=q))
        for u, v, s in product(range(q), repeat=3):
            X = ((1, u), (0, v))
            Y = ((s, 0), (-u, 1))
            pairs.append(_keep_if_first(params, X, Y, chart=2, q=q))
        for x, y, w in product(range(q), repeat=3):
            X = ((x, 1), (y, 0))
            Y = ((0, w), (1, -x))
            pairs.append(_keep_if_first(params, X, Y, chart=3, q=q))
        kept = tuple(pr for pr in pairs if pr is not None)
        assert len(kept) == rep_count(p, 2, m)
        return RepSet(params, 2, m, kept)
    raise Unsupported("representative sets are implemented for n <= 2")


def _pair1(params, x, y) -> PPair:
    return PPair(KMatrix(params, [[x]]), KMatrix(params, [[y]]))


def _ident():
    return ((1, 0), (0, 1))


def _symmetric_reps(q):
    for a, b, c in product(range(q), repeat=3):
        yield ((a, b), (b, c))


def _det2(M, q):
    return (M[0][0] * M[1][1] - M[0][1] * M[1][0]) % q


def _minor(X, Y, i, j, q):
    """2x2 minor of (X | Y) on columns i < j (0..3)."""
    cols = [(X[0][0], X[1][0]), (X[0][1], X[1][1]),
            (Y[0][0], Y[1][0]), (Y[0][1], Y[1][1])]
    a, b = cols[i], cols[j]
    return (a[0] * b[1] - a[1] * b[0]) % q


def _keep_if_first(params, X, Y, chart, q):
    p = params.p
    units = [
        _det2(Y, q) % p != 0,                 # chart 0
        _det2(X, q) % p != 0,                 # chart 1
        _minor(X, Y, 0, 3, q) % p != 0,       # chart 2
        _minor(X, Y, 1, 2, q) % p != 0,       # chart 3
    ]
    if units.index(True) != chart:
        return None
    return PPair(KMatrix(params, X), KMatrix(params, Y))


# ---------------------------------------------------------------- membership

@dataclass(frozen=True)
class SigmaCertificate:
    verdict: bool
    level: int
    lam: int                 # pi-units; |Z| = p^(lam/e)
    threshold: int           # fail iff v(det(XZ+Y)) > threshold
    witness: object          # PPair of the worst pair, or None on pass
    witness_valuation: object  # int, or None when det is 0 at precision
    reps_level: int
    sound: bool              # reps_level >= level
    pairs_checked: int

    def to_dict(self):
        w = None
        if self.witness is not None:
            w = {
                "X": _int_rows(self.witness.X),
                "Y": _int_rows(self.witness.Y),
                "det_valuation": self.witness_valuation,
            }
        return {
            "verdict": "member" if self.verdict else "rejected",
            "level": self.level,
            "lam_pi_units": self.lam,
            "threshold": self.threshold,
            "witness": w,
            "reps_level": self.reps_level,
            "sound": self.sound,
            "pairs_checked": self.pairs_checked,
        }


def _int_rows(M: KMatrix):
    out = []
    for r in M.rows:
        row = []
        for x in r:
            v, digs = x.pi_digits()
            if v is None:
                row.append(0)
            else:
                p, e = M.params.p, M.params.e
                acc = 0
                for i, a in enumerate(digs):
                    pos = v + i
                    if pos % e == 0 and a:
                        acc += a * p ** (pos // e)
                row.append(acc)
        out.append(row)
    return out


def b_minus_contains(Z: KMatrix, m: int, pair: PPair):
    """Does (X, Y) witness failure at level m, i.e. |det(XZ+Y)| < |Z|^n |p|^(nm)?

    Returns (bool, valuation) where valuation is None for a determinant that
    is zero at working precision (recorded as v >= its absolute precision).
    Raises PrecisionLoss when the strict inequality cannot be certified.
    """
    n = pair.n
    e = Z.params.e
    lam = lam_pi_units(Z)
    thr = n * m * e - n * lam
    d = det(pair.X @ Z + pair.Y)
    v = d.valuation()
    if v is None:
        if d.abs_prec() > thr:
            return True, None
        raise PrecisionLoss(
            "determinant is zero at working precision but the shell "
            "threshold exceeds the certified depth"
        )
    return v > thr, v


def in_sigma_m(Z: KMatrix, m: int, reps: RepSet) -> SigmaCertificate:
    """Scan the representative pairs; worst offender becomes the witness."""
    if Z.params != reps.params:
        raise Unsupported("Z and representative set use different parameters")
    n, e = reps.n, reps.params.e
    if Z.nrows != n or Z.ncols != n:
        raise ValueError("Z has the wrong size for this representative set")
    if not reps.pairs:
        raise Unsupported("empty representative set")
    lam = lam_pi_units(Z)
    thr = n * m * e - n * lam
    worst, worst_v, worst_rank = None, None, None
    for pair in reps.pairs:
        d = det(pair.X @ Z + pair.Y)
        v = d.valuation()
        if v is None:
            if d.abs_prec() <= thr:
                raise PrecisionLoss(
                    "membership verdict depends on digits beyond working precision"
                )
            rank = d.abs_prec()  # v >= abs_prec > thr: certified failure
        else:
            rank = v
        if worst_rank is None or rank > worst_rank:
            worst, worst_v, worst_rank = pair, v, rank
    verdict = worst_rank <= thr
    return SigmaCertificate(
        verdict=verdict,
        level=m,
        lam=lam,
        threshold=thr,
        witness=None if verdict else worst,
        witness_valuation=None if verdict else worst_v,
        reps_level=reps.level,
        sound=reps.level >= m,
        pairs_checked=len(reps.pairs),
    )


# ---------------------------------------------------------------- named points

def make_diagonal_point(params: FieldParams, n: int, ks) -> KMatrix:
    """diag(pi^(e / (n+1)^k_i)): the standard deep points of the filtration.

    Each exponent must be integral, i.e. (n+1)^k_i must divide e; otherwise
    the chosen ramification cannot host the point.
    """
    ks = list(ks)
    if len(ks) != n:
        raise ValueError("need one exponent parameter per diagonal entry")
    entries = []
    for k in ks:
        denom = (n + 1) ** k
        if params.e % denom:
            raise RamificationInsufficient(
                f"e = {params.e} is not divisible by (n+1)^k = {denom}"
            )
        entries.append(PadicScalar.pi(params, params.e // denom))
    return KMatrix.diag(params, entries)


def translate_and_certify(g: KMatrix, Z: KMatrix, m: int,
                          reps_at_nm: RepSet) -> SigmaCertificate:
    """Certificate that g.Z lies in Sigma(n*m) (integral g, Z in Sigma(m))."""
    n = Z.nrows
    if reps_at_nm.level < n * m:
        raise Unsupported("need a representative set of level >= n*m")
    return in_sigma_m(mobius(g, Z), n * m, reps_at_nm)


def equivalence_check(pair_a: PPair, pair_b: PPair, m: int, points) -> tuple:
    """Same-verdict check for two pairs at level m over the given points.

    Returns (True, None) or (False, index_of_disagreeing_point).
    """
    for idx, Z in enumerate(points):
        va, _ = b_minus_contains(Z, m, pair_a)
        vb, _ = b_minus_contains(Z, m, pair_b)
        if va != vb:
            return False, idx
    return True, None
