"""Exact arithmetic in the totally ramified extension K = Q_p(pi), pi^e = p.

An element is stored as

    x = p^(-d) * (c_0 + c_1*pi + ... + c_{e-1}*pi^(e-1)),   c_t in Z,

with the components c_t known modulo p^M.  Since pi^e = p, this is the same
data as a truncated pi-digit expansion (``pi_digits`` recovers it), but
addition and multiplication become plain bigint work on length-e vectors:
multiplication convolves the component vectors and folds the overflow
positions t >= e back down via pi^e = p.

Valuations are normalized so v(pi) = 1 and v(p) = e (integers).  The absolute
value is |x| = p^(-v(x)/e); the exponent is exposed as an exact Fraction.
The base field F = Q_p sits inside K as the elements whose components c_t
vanish for all t >= 1 -- equivalently, whose pi-digit expansion is supported
on positions divisible by e.  That membership test is exact on the digits we
hold, and a *nonzero* high component certifies non-membership outright.

Precision model: capped-relative.  Fresh integers enter with a little more
than ``precision`` significant pi-digits, arithmetic tracks absolute
precision through the usual ultrametric rules, and results keep at most
``precision`` significant digits.  Additive cancellation that leaves a
nonzero result with fewer than ``floor`` significant digits raises
PrecisionLoss; a result that is zero at working precision is simply the
zero-at-precision element (equality tests must not throw).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError, ParameterMismatch, PrecisionLoss


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class FieldParams:
    """Parameters of K = Q_p(pi), pi^e = p, with working precision.

    precision: significant pi-digits kept per element (relative cap).
    floor: minimum certified significant digits a nonzero additive result
           must retain; below it PrecisionLoss is raised.  0 disables.
    """

    p: int
    e: int = 1
    precision: int = 24
    floor: int = 4

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise ConfigError(f"p must be prime, got {self.p}")
        if self.e < 1:
            raise ConfigError(f"e must be >= 1, got {self.e}")
        if self.precision < 2:
            raise ConfigError(f"precision must be >= 2, got {self.precision}")
        if self.floor < 0 or self.floor > self.precision:
            raise ConfigError(
                f"floor must lie in [0, precision], got {self.floor}"
            )

    @property
    def base_m(self) -> int:
        # p-digit headroom for fresh elements: cap plus two guard p-digits
        return -(-self.precision // self.e) + 2


class PadicScalar:
    """One element of K, exact modulo a tracked power of pi."""

    __slots__ = ("params", "_d", "_c", "_m")

    def __init__(self, params: FieldParams, d: int, comps: tuple, m: int):
        # internal; use the classmethod constructors
        self.params = params
        self._d = d
        self._c = comps
        self._m = m

    # ---------------- constructors ----------------

    @classmethod
    def _mk(cls, params: FieldParams, d: int, comps, m: int,
            check_floor: bool = False) -> "PadicScalar":
        """Normalize (reduce mod p^m, strip common p powers, cap relative)."""
        p, e = params.p, params.e
        if m < 1:
            raise PrecisionLoss("no significant digits remain")
        pm = p ** m
        comps = [c % pm for c in comps]
        if len(comps) != e:
            raise ValueError("component vector has wrong length")
        if all(c == 0 for c in comps):
            return cls(params, d, tuple(comps), m)
        # strip the largest common power of p into d (canonical d);
        # nonzero residues mod p^m have v_p < m, so at least one digit stays
        k = min(_vp(c, p) for c in comps if c != 0)
        if k > 0:
            pk = p ** k
            comps = [c // pk for c in comps]
            d -= k
            m -= k
        v = min(e * _vp(c, p) + t for t, c in enumerate(comps) if c != 0) - e * d
        sig = e * (m - d) - v
        if check_floor and params.floor > 0 and sig < params.floor:
            raise PrecisionLoss(
                f"cancellation left only {sig} significant pi-digits "
                f"(floor is {params.floor})"
            )
        cap = params.precision
        if sig > cap + e:  # trim to the relative cap (plus sub-digit slack)
            new_abs = v + cap + e
            new_m = d + new_abs // e
            if new_m < m:
                pm2 = params.p ** new_m
                comps = [c % pm2 for c in comps]
                m = new_m
        return cls(params, d, tuple(comps), m)

    @classmethod
    def from_int(cls, params: FieldParams, n: int) -> "PadicScalar":
        comps = [0] * params.e
        comps[0] = n
        return cls.from_components(params, comps)

    @classmethod
    def zero(cls, params: FieldParams) -> "PadicScalar":
        return cls.from_components(params, [0])

    @classmethod
    def one(cls, params: FieldParams) -> "PadicScalar":
        return cls.from_components(params, [1])

    @classmethod
    def pi(cls, params: FieldParams, k: int = 1) -> "PadicScalar":
        """The uniformizer power pi^k (any integer k)."""
        q, t = divmod(k, params.e)
        comps = [0] * params.e
        comps[t] = params.p ** q if q >= 0 else 1
        return cls.from_components(params, comps, d=-q if q < 0 else 0)

    @classmethod
    def from_components(cls, params: FieldParams, comps, d: int = 0
                        ) -> "PadicScalar":
        """Element p^(-d) * sum comps[t] * pi^t from integer components.

        Every supplied digit is kept: the working modulus is sized so the
        relative cap applies to the *stripped* vector, making big integer
        inputs (e.g. p^100) exact.
        """
        comps = list(comps)
        if len(comps) > params.e:
            raise ValueError("too many components")
        comps = comps + [0] * (params.e - len(comps))
        nz = [c for c in comps if c != 0]
        if not nz:
            # an exact zero is congruent to 0 modulo *every* power of pi,
            # so claim a generous modulus: products against negative-
            # valuation cofactors erode absolute precision, and a zero
            # term must not drag a sum's precision below the result's
            # valuation (Leibniz determinants hit this)
            return cls._mk(params, d, comps, 4 * params.base_m)
        g = min(_vp(c, params.p) for c in nz)
        return cls._mk(params, d, comps, params.base_m + g)

    @classmethod
    def from_fraction(cls, params: FieldParams, q: Fraction) -> "PadicScalar":
        q = Fraction(q)
        num = cls.from_int(params, q.numerator)
        if q.denominator == 1:
            return num
        return num / cls.from_int(params, q.denominator)

    # ---------------- inspection ----------------

    def valuation(self):
        """v(x) with v(pi) = 1, v(p) = e; None when zero at working precision."""
        e, p = self.params.e, self.params.p
        if all(c == 0 for c in self._c):
            return None
        return min(e * _vp(c, p) + t
                   for t, c in enumerate(self._c) if c != 0) - e * self._d

    def abs_prec(self) -> int:
        """Absolute precision in pi-units: the element is known mod pi^this."""
        return self.params.e * (self._m - self._d)

    def significance(self) -> int:
        v = self.valuation()
        if v is None:
            return 0
        return self.abs_prec() - v

    def is_zero(self) -> bool:
        return all(c == 0 for c in self._c)

    def capped_abs(self, abs_digits: int) -> "PadicScalar":
        """Copy claiming at most abs_digits pi-digits of absolute precision.

        Weakening a claim is always sound; root finders use it so a root
        certified only to depth k is not handed back pretending the digits
        above k mean anything."""
        m_new = min(self._m, abs_digits // self.params.e + self._d)
        if m_new < 1:
            raise PrecisionLoss("no significant digits remain")
        return PadicScalar._mk(self.params, self._d, list(self._c), m_new)

    def lift_digits(self) -> "PadicScalar":
        """The canonical exact representative of this residue class.

        Components are stored modulo p^M, so they already name a definite
        element; the lift carries those digits with a fresh full-precision
        claim.  It is NOT equal to self beyond self's claimed precision --
        anything deduced from the extra digits must be re-certified by the
        caller (root polishing re-evaluates and re-caps)."""
        return PadicScalar.from_components(self.params, list(self._c),
                                           self._d)

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def abs_exp(self):
        """log_p |x| as an exact Fraction (None for zero at precision)."""
        v = self.valuation()
        if v is None:
            return None
        return Fraction(-v, self.params.e)

    def pi_digits(self, length: int = None):
        """Canonical pi-digit expansion: (v, (a_0, a_1, ...)) meaning
        x = sum_i a_i pi^(v+i) with digits in {0, ..., p-1}.

        Digits are exact: position v+i carries the i-th digit for every
        i < significance().  Zero at precision returns (None, ()).
        """
        v = self.valuation()
        if v is None:
            return (None, ())
        p, e, d = self.params.p, self.params.e, self._d
        sig = self.significance()
        n = sig if length is None else min(length, sig)
        digits = [0] * n
        for t, c in enumerate(self._c):
            c %= p ** self._m
            q = 0
            while c:
                c, a = divmod(c, p)
                pos = t + e * (q - d) - v
                if 0 <= pos < n:
                    digits[pos] = a
                q += 1
        return (v, tuple(digits))

    def in_base_field(self) -> bool:
        """True when x lies in F = Q_p as far as the held digits can tell.

        Components c_t, t >= 1, all vanish mod p^M.  This is exact for
        elements constructed from F but only "at precision" in general;
        see not_in_base_field_certified for the complementary certificate.
        """
        return all(c == 0 for c in self._c[1:])

    def not_in_base_field_certified(self) -> bool:
        """True when some component c_t, t >= 1, is nonzero at precision.

        A nonzero residue is a genuine certificate: the true component is
        congruent to it, hence nonzero, hence x is not in F.
        """
        return any(c != 0 for c in self._c[1:])

    def f_components(self):
        """The F-coordinates (x_0, ..., x_{e-1}) with x = sum x_t pi^t, x_t in F."""
        out = []
        for t in range(self.params.e):
            comps = [0] * self.params.e
            comps[0] = self._c[t]
            out.append(PadicScalar._mk(self.params, self._d, comps, self._m))
        return tuple(out)

    # ---------------- arithmetic ----------------

    def _coerce(self, other):
        if isinstance(other, PadicScalar):
            if other.params != self.params:
                raise ParameterMismatch(
                    f"mixed field parameters: {self.params} vs {other.params}"
                )
            return other
        if isinstance(other, int):
            return PadicScalar.from_int(self.params, other)
        if isinstance(other, Fraction):
            return PadicScalar.from_fraction(self.params, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.params.p
        d = max(self._d, o._d)
        s1, s2 = p ** (d - self._d), p ** (d - o._d)
        m = min(self._m + (d - self._d), o._m + (d - o._d))
        comps = [a * s1 + b * s2 for a, b in zip(self._c, o._c)]
        return PadicScalar._mk(self.params, d, comps, m, check_floor=True)

    __radd__ = __add__

    def add_lenient(self, other):
        """Sum without the significance floor tripwire.

        The result is still correct at its claimed precision; it is merely
        allowed to keep fewer significant digits than the floor.  For use
        where heavy cancellation is *expected and handled* (synthetic
        division by a root known only to working precision), never as a
        way to silence a genuine cancellation diagnosis."""
        o = self._coerce(other)
        if o is None:
            raise TypeError("cannot coerce %r" % (other,))
        p = self.params.p
        d = max(self._d, o._d)
        s1, s2 = p ** (d - self._d), p ** (d - o._d)
        m = min(self._m + (d - self._d), o._m + (d - o._d))
        comps = [a * s1 + b * s2 for a, b in zip(self._c, o._c)]
        return PadicScalar._mk(self.params, d, comps, m, check_floor=False)

    def __neg__(self):
        return PadicScalar(self.params, self._d,
                           tuple((-c) % self.params.p ** self._m
                                 for c in self._c), self._m)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p, e = self.params.p, self.params.e
        # convolve, then fold pi^e -> p
        full = [0] * (2 * e - 1)
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(o._c):
                if b:
                    full[i + j] += a * b
        comps = full[:e]
        for t in range(e, 2 * e - 1):
            comps[t - e] += p * full[t]
        d = self._d + o._d
        a1, a2 = self.abs_prec(), o.abs_prec()
        v1, v2 = self.valuation(), o.valuation()
        v1 = a1 if v1 is None else v1
        v2 = a2 if v2 is None else v2
        abs_res = min(a1 + v2, a2 + v1)
        m = d + abs_res // e
        return PadicScalar._mk(self.params, d, comps, m)

    __rmul__ = __mul__

    def _pi_shift(self, s: int) -> "PadicScalar":
        """Multiply by pi^s, 0 <= s < e, exactly (components fold via pi^e = p)."""
        e, p = self.params.e, self.params.p
        if s == 0:
            return self
        comps = [0] * e
        for t, c in enumerate(self._c):
            j = t + s
            if j < e:
                comps[j] += c
            else:
                comps[j - e] += p * c
        return PadicScalar(self.params, self._d,
                           tuple(c % p ** self._m for c in comps), self._m)

    def inverse(self) -> "PadicScalar":
        """Multiplicative inverse via Newton iteration in (Z/p^M)[pi]/(pi^e - p).

        Exact to the operand's relative precision (up to sub-pi^e slack):
        write x = p^k * u * pi^(-s) with u a unit of the component ring,
        invert u by y <- y (2 - u y) from the mod-p seed, and shift back.
        """
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("inverse of zero (at working precision)")
        p, e = self.params.p, self.params.e
        s = (-v) % e
        k = (v + s) // e
        xs = self._pi_shift(s)            # v(xs) = e*k; comps all divide p^(k+d)
        shift = k + xs._d
        m_u = xs._m - shift
        if m_u < 1:
            raise PrecisionLoss("not enough digits to invert")
        if shift >= 0:
            pk = p ** shift
            u = [c // pk for c in xs._c]
        else:
            pk = p ** (-shift)
            u = [c * pk for c in xs._c]
        pmu = p ** m_u
        u = [c % pmu for c in u]
        # Newton: y <- y (2 - u y) in R = (Z/p^m_u)[pi]/(pi^e - p)
        y = [0] * e
        y[0] = pow(u[0], -1, p)
        steps = max(1, math.ceil(math.log2(e * m_u)) + 2)
        for _ in range(steps):
            uy = _ring_mul(u, y, p, e, pmu)
            t = [(-c) % pmu for c in uy]
            t[0] = (t[0] + 2) % pmu
            y = _ring_mul(y, t, p, e, pmu)
        inv_u = PadicScalar(self.params, 0, tuple(y), m_u)
        res = inv_u._pi_shift(s)
        # dividing the value by p^k moves d only; the components are still
        # known mod p^m_u, so the absolute precision drops by e*k
        return PadicScalar._mk(self.params, res._d + k, list(res._c), res._m)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = PadicScalar.one(self.params)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    __hash__ = None

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        v, digs = self.pi_digits(6)
        if v is None:
            return f"O(pi^{self.abs_prec()})"
        terms = []
        for i, a in enumerate(digs):
            if a == 0:
                continue
            pos = v + i
            if pos == 0:
                terms.append(f"{a}")
            elif pos == 1:
                terms.append(f"{a}*pi" if a != 1 else "pi")
            else:
                terms.append(f"{a}*pi^{pos}" if a != 1 else f"pi^{pos}")
        body = " + ".join(terms) or "0"
        if self.significance() > 6:
            body += " + ..."
        return f"<{body} (p={self.params.p}, e={self.params.e})>"


def _ring_mul(a, b, p, e, pm):
    """Product in (Z/pm)[pi]/(pi^e - p) on length-e component vectors."""
    full = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                full[i + j] += x * y
    out = full[:e]
    for t in range(e, 2 * e - 1):
        out[t - e] += p * full[t]
    return [c % pm for c in out]
