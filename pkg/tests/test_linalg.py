"""Linear algebra tests against a pure-Fraction oracle.

Rational matrices embed in K for any (p, e), and every determinant /
adjugate / rank claim is compared against exact Fraction arithmetic done
independently here (recursive cofactor expansion).
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padicsiegel import FieldParams, PadicScalar, Singular, Unsupported
from padicsiegel.linalg import (
    KMatrix,
    adjugate,
    det,
    inverse,
    rank_over_F,
    solve_right,
)


# ---------------------------------------------------------------- oracle

def o_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = Fraction(0)
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * o_det(minor)
        acc += term if j % 2 == 0 else -term
    return acc


def o_rank(rows):
    a = [list(map(Fraction, r)) for r in rows]
    n, m = len(a), len(a[0])
    rank, row = 0, 0
    for col in range(m):
        piv = next((i for i in range(row, n) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        for i in range(row + 1, n):
            f = a[i][col] / a[row][col]
            a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        rank += 1
        row += 1
    return rank


frac_entries = st.fractions(min_value=-9, max_value=9, max_denominator=12)


def square(n):
    return st.lists(st.lists(frac_entries, min_size=n, max_size=n),
                    min_size=n, max_size=n)


PARAMS = [FieldParams(p=5, e=1), FieldParams(p=2, e=2), FieldParams(p=3, e=2)]


# ---------------------------------------------------------------- examples

def test_det_of_standard_symplectic_form():
    for P in PARAMS:
        J = KMatrix(P, [[0, 1], [-1, 0]])
        assert det(J) == 1


def test_rank_example():
    P = FieldParams(p=5, e=1)
    M = KMatrix(P, [[1, 2], [2, 4]])
    assert rank_over_F(M) == 1


def test_rank_of_padded_identity():
    P = FieldParams(p=3, e=1)
    for n in (1, 2, 3):
        M = KMatrix.identity(P, n).hstack(KMatrix.zeros(P, n, n))
        assert rank_over_F(M) == n


def test_inverse_singular_raises():
    P = FieldParams(p=5, e=1)
    with pytest.raises(Singular):
        inverse(KMatrix(P, [[1, 2], [2, 4]]))


def test_rank_rejects_ramified_entries():
    P = FieldParams(p=5, e=2)
    M = KMatrix(P, [[PadicScalar.pi(P), 0], [0, 1]])
    with pytest.raises(Unsupported):
        rank_over_F(M)


def test_det_with_uniformizer_entries():
    P = FieldParams(p=2, e=2)
    pi = PadicScalar.pi(P)
    M = KMatrix(P, [[pi, 1], [1, pi]])
    # det = pi^2 - 1 = 2 - 1 = 1
    assert det(M) == 1
    Minv = inverse(M)
    assert (M @ Minv) == KMatrix.identity(P, 2)


# ---------------------------------------------------------------- oracle comparison

@given(st.sampled_from([1, 2, 3, 4, 5]), st.data())
@settings(max_examples=60, deadline=None)
def test_det_matches_fraction_oracle(n, data):
    rows = data.draw(square(n))
    expected = o_det(rows)
    # adversarial rational matrices make Leibniz terms cancel far below
    # their own size (terms at valuation -6 summing to valuation +18 have
    # been drawn), so give the oracle comparison a deep digit budget
    for P in PARAMS[:2]:
        deep = FieldParams(p=P.p, e=P.e, precision=96)
        M = KMatrix(deep, rows)
        assert det(M) == PadicScalar.from_fraction(deep, expected)


@given(square(3))
@settings(max_examples=60, deadline=None)
def test_adjugate_identity(rows):
    P = FieldParams(p=3, e=1)
    M = KMatrix(P, rows)
    d = det(M)
    assert adjugate(M) @ M == KMatrix.identity(P, 3) * d


@given(square(3))
@settings(max_examples=40, deadline=None)
def test_inverse_roundtrip(rows):
    if o_det(rows) == 0:
        return
    # dets of adversarial rational matrices can have large p-valuation, so
    # certifying M M^-1 = I needs headroom beyond the default cap
    P = FieldParams(p=2, e=2, precision=64)
    M = KMatrix(P, rows)
    assert M @ inverse(M) == KMatrix.identity(P, 3)
    assert inverse(M) @ M == KMatrix.identity(P, 3)


@given(square(3), square(3))
@settings(max_examples=60, deadline=None)
def test_det_multiplicative(r1, r2):
    P = FieldParams(p=5, e=1)
    A, B = KMatrix(P, r1), KMatrix(P, r2)
    assert det(A @ B) == det(A) * det(B)
    assert det(A.T) == det(A)


@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4),
                min_size=2, max_size=4))
@settings(max_examples=80, deadline=None)
def test_rank_matches_fraction_oracle(rows):
    P = FieldParams(p=5, e=1)
    assert rank_over_F(KMatrix(P, rows)) == o_rank(rows)


@given(square(3), square(3))
@settings(max_examples=30, deadline=None)
def test_solve_right(mr, br):
    if o_det(mr) == 0:
        return
    P = FieldParams(p=3, e=2, precision=64)
    M, B = KMatrix(P, mr), KMatrix(P, br)
    X = solve_right(M, B)
    assert M @ X == B


def test_solve_example_with_mixed_valuations():
    P = FieldParams(p=2, e=2)
    pi = PadicScalar.pi(P)
    M = KMatrix(P, [[pi, 1, 0], [1, 0, pi ** -1], [0, 1, 1]])
    X = solve_right(M, KMatrix.identity(P, 3))
    assert M @ X == KMatrix.identity(P, 3)
