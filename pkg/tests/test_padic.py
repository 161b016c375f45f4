"""Scalar arithmetic tests.

The oracle is an independent model of K = Q_p(pi): elements are length-e
vectors of exact Fractions (coordinates in the power basis 1, pi, ...,
pi^(e-1)), multiplied by schoolbook convolution + fold, with pi-digit
expansions extracted digit-by-digit from the rationals.  PadicScalar must
agree with it on valuations and digit prefixes.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padicsiegel import FieldParams, PadicScalar, PrecisionLoss, ConfigError


# ---------------------------------------------------------------- oracle

def frac_vp(q: Fraction, p: int) -> int:
    assert q != 0
    v, n, d = 0, q.numerator, q.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def frac_digits(q: Fraction, p: int, upto: int):
    """(v, digits) with q = sum digits[i] * p^(v+i), digits up to position `upto`."""
    if q == 0:
        return (None, [])
    v = frac_vp(q, p)
    r = q / Fraction(p) ** v
    digits = []
    pos = v
    while pos < upto:
        # r has nonnegative valuation; its digit is num * den^-1 mod p
        a = (r.numerator * pow(r.denominator, -1, p)) % p
        digits.append(a)
        r = (r - a) / p
        pos += 1
    return (v, digits)


def o_val(vec, p, e):
    vals = [e * frac_vp(c, p) + t for t, c in enumerate(vec) if c != 0]
    return min(vals) if vals else None


def o_add(u, w):
    return [a + b for a, b in zip(u, w)]


def o_mul(u, w, p, e):
    full = [Fraction(0)] * (2 * e - 1)
    for i, a in enumerate(u):
        for j, b in enumerate(w):
            full[i + j] += a * b
    out = full[:e]
    for t in range(e, 2 * e - 1):
        out[t - e] += p * full[t]
    return out


def o_pi_digits(vec, p, e, start, count):
    """pi-digits of sum vec[t] pi^t at positions start .. start+count-1."""
    per = []
    for t in range(e):
        hi = (start + count - t) // e + 2
        per.append(frac_digits(vec[t], p, hi))
    out = []
    for j in range(start, start + count):
        t = j % e
        m = (j - t) // e
        v, digs = per[t]
        if v is None or m < v or m - v >= len(digs):
            out.append(0)
        else:
            out.append(digs[m - v])
    return out


def mk(params, vec):
    """Build sum vec[t] pi^t through the public constructors."""
    acc = PadicScalar.zero(params)
    for t, c in enumerate(vec):
        if c != 0:
            acc = acc + PadicScalar.from_fraction(params, c) * PadicScalar.pi(params, t)
    return acc


# ---------------------------------------------------------------- frozen examples

def test_add_example_unramified():
    P = FieldParams(p=5, e=1)
    s = PadicScalar.from_int(P, 2) + PadicScalar.from_int(P, 3)
    assert s.valuation() == 1
    assert s.pi_digits(1) == (1, (1,))  # 5 = 1 * 5^1


def test_add_example_ramified_pi_plus_pi():
    # in Q_2(pi), pi^2 = 2: pi + pi = 2 pi = pi^3
    P = FieldParams(p=2, e=2)
    s = PadicScalar.pi(P) + PadicScalar.pi(P)
    assert s.valuation() == 3
    v, digs = s.pi_digits(3)
    assert v == 3 and digs[0] == 1 and all(a == 0 for a in digs[1:])


def test_p_has_valuation_e():
    for p, e in [(2, 2), (5, 3), (3, 1)]:
        P = FieldParams(p=p, e=e)
        assert PadicScalar.from_int(P, p).valuation() == e


def test_inverse_of_uniformizer():
    P = FieldParams(p=2, e=2)
    x = PadicScalar.pi(P).inverse()
    assert x.valuation() == -1
    assert (x * PadicScalar.pi(P)) == 1
    assert x.abs_exp() == Fraction(1, 2)  # |pi^-1| = 2^(1/2)


def test_abs_exp_is_exact_fraction():
    P = FieldParams(p=2, e=2)
    assert PadicScalar.pi(P).abs_exp() == Fraction(-1, 2)
    assert PadicScalar.from_int(P, 8).abs_exp() == Fraction(-3)
    assert PadicScalar.zero(P).abs_exp() is None


def test_big_integer_stays_exact():
    P = FieldParams(p=5, e=1)
    x = PadicScalar.from_int(P, 5 ** 40)
    assert x.valuation() == 40
    assert (x * PadicScalar.from_int(P, 5) ** (-40)) == 1


def test_negative_pi_powers():
    P = FieldParams(p=3, e=2)
    x = PadicScalar.pi(P, -5)
    assert x.valuation() == -5
    assert (x * PadicScalar.pi(P, 5)) == 1


def test_base_field_membership():
    P = FieldParams(p=5, e=2)
    a = PadicScalar.from_fraction(P, Fraction(7, 50))
    assert a.in_base_field() and not a.not_in_base_field_certified()
    b = a + PadicScalar.pi(P)
    assert b.not_in_base_field_certified() and not b.in_base_field()
    # f_components puts it back together
    comps = b.f_components()
    assert all(c.in_base_field() for c in comps)
    recon = sum((c * PadicScalar.pi(P, t) for t, c in enumerate(comps)),
                PadicScalar.zero(P))
    assert recon == b


def test_precision_loss_on_deep_cancellation():
    P = FieldParams(p=5, e=1)  # fresh ints carry 26 digits
    x = PadicScalar.from_components(P, [1 + 5 ** 24])
    with pytest.raises(PrecisionLoss):
        _ = x - 1
    # floor=0 disables the guard
    P0 = FieldParams(p=5, e=1, floor=0)
    y = PadicScalar.from_components(P0, [1 + 5 ** 24]) - 1
    assert y.valuation() == 24


def test_exact_zero_never_raises():
    P = FieldParams(p=5, e=2)
    x = PadicScalar.from_fraction(P, Fraction(22, 7)) * PadicScalar.pi(P, 3)
    assert (x - x).is_zero()
    assert x == x


def test_relative_cap():
    P = FieldParams(p=2, e=2, precision=24)
    x = PadicScalar.from_int(P, 1) / 3
    assert x.significance() <= 24 + 2


def test_zero_division():
    P = FieldParams(p=5, e=1)
    with pytest.raises(ZeroDivisionError):
        PadicScalar.zero(P).inverse()


def test_config_validation():
    with pytest.raises(ConfigError):
        FieldParams(p=6, e=1)
    with pytest.raises(ConfigError):
        FieldParams(p=5, e=0)
    with pytest.raises(ConfigError):
        FieldParams(p=5, e=1, precision=1)


def test_parameter_mismatch():
    from padicsiegel import ParameterMismatch
    a = PadicScalar.one(FieldParams(p=5, e=1))
    b = PadicScalar.one(FieldParams(p=5, e=2))
    with pytest.raises(ParameterMismatch):
        _ = a + b


# ---------------------------------------------------------------- oracle comparison

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=60)
small_pe = st.sampled_from([(2, 1), (2, 2), (3, 2), (5, 1), (5, 3)])


@st.composite
def field_with_vecs(draw, k):
    p, e = draw(small_pe)
    vecs = [tuple(draw(fracs) for _ in range(e)) for _ in range(k)]
    return FieldParams(p=p, e=e), vecs


@given(field_with_vecs(1))
@settings(max_examples=150, deadline=None)
def test_digits_match_oracle(data):
    P, (vec,) = data
    x = mk(P, vec)
    ov = o_val(vec, P.p, P.e)
    assert x.valuation() == ov
    if ov is None:
        return
    n = min(x.significance(), 12)
    v, digs = x.pi_digits(n)
    assert list(digs) == o_pi_digits(vec, P.p, P.e, v, n)


@given(field_with_vecs(2))
@settings(max_examples=150, deadline=None)
def test_add_mul_match_oracle(data):
    P, (u, w) = data
    x, y = mk(P, u), mk(P, w)
    for z, ovec in [(x + y, o_add(u, w)), (x * y, o_mul(u, w, P.p, P.e))]:
        ov = o_val(ovec, P.p, P.e)
        assert z.valuation() == ov
        if ov is not None:
            n = min(z.significance(), 10)
            v, digs = z.pi_digits(n)
            assert list(digs) == o_pi_digits(ovec, P.p, P.e, v, n)


@given(field_with_vecs(1))
@settings(max_examples=150, deadline=None)
def test_inverse_roundtrip(data):
    P, (vec,) = data
    x = mk(P, vec)
    if x.is_zero():
        return
    y = x.inverse()
    assert y.valuation() == -x.valuation()
    assert (x * y) == 1
    assert (1 / x) == y


@given(field_with_vecs(3))
@settings(max_examples=100, deadline=None)
def test_field_axioms_at_precision(data):
    P, (u, w, t) = data
    x, y, z = mk(P, u), mk(P, w), mk(P, t)
    assert (x + y) == (y + x)
    assert ((x + y) + z) == (x + (y + z))
    assert (x * y) == (y * x)
    assert ((x * y) * z) == (x * (y * z))
    assert (x * (y + z)) == (x * y + x * z)


@given(field_with_vecs(2))
@settings(max_examples=150, deadline=None)
def test_ultrametric(data):
    P, (u, w) = data
    x, y = mk(P, u), mk(P, w)
    vx, vy, vs = x.valuation(), y.valuation(), (x + y).valuation()
    if vx is None or vy is None:
        return
    if vs is not None:
        assert vs >= min(vx, vy)
    if vx != vy:
        assert vs == min(vx, vy)  # non-archimedeanness kicks in


@given(field_with_vecs(1), st.integers(min_value=-4, max_value=6))
@settings(max_examples=100, deadline=None)
def test_pow_agrees_with_repeated_mul(data, n):
    P, (vec,) = data
    x = mk(P, vec)
    if x.is_zero():
        return
    acc = PadicScalar.one(P)
    for _ in range(abs(n)):
        acc = acc * x
    if n < 0:
        acc = acc.inverse()
    assert x ** n == acc
