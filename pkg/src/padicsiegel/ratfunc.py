"""Polynomials and rational functions over a pluggable coefficient field.

Two coefficient fields are provided: K itself (KField) and the rational
function field K(Z) in a formal transcendental (FunctionField, whose
elements are themselves RationalFunction values).  The second one exists so
identities "for generic Z" can be checked symbolically: a non-constant
element of K(Z) is *certifiably* outside F, which is exactly the geometric
condition the residue pairing needs.

Rational functions optionally carry their denominator's factorization
(`den_roots`): constructions like (a z + b)^(-k) and Moebius substitution
know where their poles are, the arithmetic propagates and re-verifies the
root lists by trial division, and anything that loses track falls back to
the p-adic root finder (over K) or reports IrreduciblePole.

Root finding over F = Q_p is a digit DFS with a Newton cutover once
v(f(r)) > 2 v(f'(r)); it is complete for F-roots at working precision and
handles negative valuations through the reversed polynomial.  Partial
fraction expansion is a strictly F-line service: denominators with factors
that have no F-roots raise IrreduciblePole rather than being decomposed.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import IrreduciblePole, ParameterMismatch, PrecisionLoss
from .padic import FieldParams, PadicScalar


# =================================================================== fields

class KField:
    """Coefficient-field adapter for K = Q_p(pi)."""

    __slots__ = ("params",)
    kind = "padic"

    def __init__(self, params: FieldParams):
        self.params = params

    def zero(self):
        return PadicScalar.zero(self.params)

    def one(self):
        return PadicScalar.one(self.params)

    def from_int(self, n: int):
        return PadicScalar.from_int(self.params, n)

    def coerce(self, x):
        if isinstance(x, PadicScalar):
            if x.params != self.params:
                raise ParameterMismatch("scalar from a different field")
            return x
        if isinstance(x, int):
            return PadicScalar.from_int(self.params, x)
        if isinstance(x, Fraction):
            return PadicScalar.from_fraction(self.params, x)
        return None

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def droppable_zero(self, x) -> bool:
        """May a trailing zero coefficient be trimmed away?

        Only when the zero is known deeply enough that discarding it cannot
        hide a value other claims still care about.  A zero at *thin*
        precision (products of heavy expected cancellation) must stay: a
        degree collapse would launder its uncertainty into an exact claim."""
        if not x.is_zero():
            return False
        return x.abs_prec() >= self.params.e * (self.params.base_m // 2)

    def eq(self, x, y) -> bool:
        return (x - y).is_zero()

    def inv(self, x):
        return x.inverse()

    def lc_normalizer(self, x):
        """Multiplier that canonicalizes a fraction's leading denominator
        coefficient: the inverse of x's *unit part*, so the lead becomes a
        pure pi power.  Inverting the full coefficient would shift every
        other coefficient's valuation by -v(x) and cap their absolute
        claims accordingly; after a deep cancellation in the lead that
        turns healthy coefficients into ones too thin to hunt roots in."""
        v = x.valuation()
        if v:
            x = x * PadicScalar.pi(self.params, -v)
        return x.inverse()

    def in_base_field(self, x) -> bool:
        return x.in_base_field()

    def not_in_base_certified(self, x) -> bool:
        return x.not_in_base_field_certified()

    def __eq__(self, other):
        return isinstance(other, KField) and other.params == self.params

    __hash__ = None


class FunctionField:
    """K(Z): rational functions in a formal variable as a coefficient field."""

    __slots__ = ("base", "var")
    kind = "tower"

    def __init__(self, base: KField, var: str = "Z"):
        self.base = base
        self.var = var

    def zero(self):
        return RationalFunction.constant(self.base, 0)

    def one(self):
        return RationalFunction.constant(self.base, 1)

    def from_int(self, n: int):
        return RationalFunction.constant(self.base, n)

    def generator(self):
        return RationalFunction.variable(self.base)

    def coerce(self, x):
        if isinstance(x, RationalFunction):
            if x.field == self.base:
                return x
            return None
        base_val = self.base.coerce(x)
        if base_val is None:
            return None
        return RationalFunction.constant(self.base, base_val)

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def droppable_zero(self, x) -> bool:
        # tower coefficients are structural: zero means the zero function
        return x.is_zero()

    def eq(self, x, y) -> bool:
        return x == y

    def inv(self, x):
        return x.inverse()

    def lc_normalizer(self, x):
        # over an exact tower there is no claim budget to protect: full
        # monic normalization is the simplest canonical form
        return x.inverse()

    def in_base_field(self, x) -> bool:
        if not x.is_constant():
            return False
        return self.base.in_base_field(x.constant_value())

    def not_in_base_certified(self, x) -> bool:
        # a non-constant rational function is transcendental over K, so it
        # is certainly not in F; constants defer to the base certificate
        if not x.is_constant():
            return True
        return self.base.not_in_base_certified(x.constant_value())

    def __eq__(self, other):
        return (isinstance(other, FunctionField) and other.base == self.base
                and other.var == self.var)

    __hash__ = None


# ================================================================ polynomials

class Polynomial:
    """Dense univariate polynomial, coefficients ascending, trimmed."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = []
        for c in coeffs:
            v = field.coerce(c)
            if v is None:
                raise TypeError(f"cannot coerce {type(c).__name__} into coefficient field")
            cs.append(v)
        while cs and field.droppable_zero(cs[-1]):
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, field, c):
        return cls(field, [c])

    @classmethod
    def variable(cls, field):
        return cls(field, [0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1        # zero polynomial: -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self):
        if self.is_zero():
            raise ValueError("leading coefficient of zero polynomial")
        return self.coeffs[-1]

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Polynomial(self.field, [])
        # zero-at-precision coefficients still multiply through: their
        # (possibly low) absolute precision must reach the sum, or the
        # product would claim digits nobody computed
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(self.field, out)

    __rmul__ = __mul__

    def scale(self, s):
        """Coefficient-wise product with the scalar s.

        Unlike the convolution in __mul__ this performs no additions, so it
        cannot trip the significance floor -- safe on polynomials whose
        coefficients already carry heavy (expected) cancellation."""
        return Polynomial(self.field, [c * s for c in self.coeffs])

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(self.field, self.field.one())
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.field == self.field:
                return other
            return None
        v = self.field.coerce(other)
        if v is None:
            return None
        return Polynomial(self.field, [v])

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        if f.is_zero(other.lc()):
            # a retained zero-at-precision lead means the divisor's degree
            # itself is uncertain; dividing by it would invert a zero claim
            raise PrecisionLoss(
                "divisor degree not certifiable: leading coefficient is "
                "zero at working precision")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(f, []), self
        inv_lc = f.inv(other.lc())
        quot = [f.zero()] * (dq + 1)
        for k in range(dq, -1, -1):
            if len(rem) < len(other.coeffs) + k:
                continue
            c = rem[len(other.coeffs) + k - 1] * inv_lc
            quot[k] = c
            if not f.is_zero(c):
                for i, b in enumerate(other.coeffs):
                    rem[i + k] = rem[i + k] - c * b
            rem.pop()
        return Polynomial(f, quot), Polynomial(f, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        # retained zero-at-precision leads can make equal polynomials differ
        # in coefficient count, so compare against an implicit zero padding
        a, b = self.coeffs, other.coeffs
        f = self.field
        for i in range(max(len(a), len(b))):
            if i >= len(a):
                if not f.is_zero(b[i]):
                    return False
            elif i >= len(b):
                if not f.is_zero(a[i]):
                    return False
            elif not f.eq(a[i], b[i]):
                return False
        return True

    __hash__ = None

    def evaluate(self, x):
        """Horner; x may be a scalar or any ring element compatible with
        the coefficients (e.g. a RationalFunction, giving composition)."""
        if self.is_zero():
            return self.field.zero() if not isinstance(x, RationalFunction) \
                else RationalFunction.constant(x.field, 0)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self):
        return Polynomial(self.field,
                          [c * i for i, c in enumerate(self.coeffs)][1:])

    def shift(self, a):
        """Coefficients of self(a + u) as a polynomial in u (Taylor shift)."""
        u_plus_a = Polynomial(self.field, [a, 1])
        return self.compose(u_plus_a)

    def compose(self, inner: "Polynomial"):
        acc = Polynomial(self.field, [])
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def reversed(self):
        """z^deg * self(1/z): the coefficient list reversed."""
        return Polynomial(self.field, list(reversed(self.coeffs)))

    def monic(self):
        if self.is_zero():
            return self
        if self.field.is_zero(self.lc()):
            raise PrecisionLoss(
                "cannot normalize: leading coefficient is zero at working "
                "precision, so the degree itself is uncertain")
        return self.scale(self.field.inv(self.lc()))

    def __repr__(self):
        return f"Polynomial({[c for c in self.coeffs]!r})"


def _precision_sound(p: Polynomial) -> bool:
    """Every coefficient still carries a sane number of absolute digits.

    Division by a gcd computed through a long Euclid chain can produce
    coefficients that are *correct* but known to only a handful of digits
    (or even to a negative absolute precision); results like that must not
    replace an exact unreduced representation."""
    if not isinstance(p.field, KField):
        return True
    params = p.field.params
    threshold = params.e * max(params.floor, 1)
    return all(c.abs_prec() >= threshold for c in p.coeffs)


def _val_normalize(p: Polynomial) -> Polynomial:
    """Scale a polynomial over K by a power of pi so its content is a unit.

    Euclidean remainder chains otherwise drift to extreme valuations and
    burn relative precision; scaling by units of the gcd is free."""
    if p.is_zero() or not isinstance(p.field, KField):
        return p
    vals = [c.valuation() for c in p.coeffs if not c.is_zero()]
    if not vals:
        # every coefficient is zero at its precision: nothing to anchor on
        return p
    vmin = min(vals)
    if vmin == 0:
        return p
    return p.scale(PadicScalar.pi(p.field.params) ** (-vmin))


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by Euclid (exact at working precision)."""
    a, b = _val_normalize(a), _val_normalize(b)
    while not b.is_zero():
        if all(b.field.droppable_zero(c) for c in b.coeffs):
            # remainder zero far beyond the floor: treat as structural.
            # A merely *thin* zero remainder must NOT end the chain -- it
            # certifies nothing, and blessing it as divisibility would let
            # a later quotient silently discard a real remainder
            break
        a, b = b, _val_normalize(a % b)
    if a.is_zero():
        return a
    return a.monic()


# ============================================================ rational funcs

class RationalFunction:
    """num/den with den monic and gcd-reduced; optional pole bookkeeping.

    _roots is None (unknown) or a tuple of (root, multiplicity) whose product
    prod (z - r)^m equals den exactly; it is re-verified on every rebuild, so
    a stale hint degrades to None instead of lying.
    """

    __slots__ = ("field", "num", "den", "_roots")

    def __init__(self, field, num: Polynomial, den: Polynomial, roots=None):
        # use the classmethods / arithmetic; this trusts its inputs
        self.field = field
        self.num = num
        self.den = den
        self._roots = roots

    # ---------------- constructors ----------------

    @classmethod
    def _make(cls, field, num: Polynomial, den: Polynomial, roots=None):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            one = Polynomial.constant(field, field.one())
            return cls(field, Polynomial(field, []), one, ())
        try:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num2, rnum = divmod(num, g)
                den2, rden = divmod(den, g)
                # substitute the quotients only when the divisions are exact
                # (structurally zero remainders): a gcd certified merely at
                # thin precision would swap in a *different* rational
                # function while keeping full-precision claims
                if (rnum.is_zero() and rden.is_zero()
                        and _precision_sound(num2)
                        and _precision_sound(den2)):
                    num, den = num2, den2
        except PrecisionLoss:
            pass
        # when the Euclid chain or the division decays below the working
        # floor, the unreduced form is kept: it is still exact, equality is
        # cross-multiplied and residues use trial division, so a common
        # factor is harmless -- only cosmetics and pole bookkeeping degrade
        if field.is_zero(den.lc()):
            raise PrecisionLoss(
                "denominator degree not certifiable: leading coefficient is "
                "zero at working precision")
        c = field.lc_normalizer(den.lc())
        # coefficient-wise scale: a convolution by a constant would re-add
        # each (possibly low-significance) coefficient to a zero slot and
        # trip the floor on values that are merely being carried along
        num, den = num.scale(c), den.scale(c)
        if roots is not None:
            roots = _refit_roots(field, roots, den)
        if den.degree == 0:
            roots = ()
        return cls(field, num, den, roots)

    @classmethod
    def from_poly(cls, field, p: Polynomial):
        return cls._make(field, p, Polynomial.constant(field, field.one()), ())

    @classmethod
    def constant(cls, field, c):
        return cls.from_poly(field, Polynomial(field, [c]))

    @classmethod
    def variable(cls, field):
        return cls.from_poly(field, Polynomial.variable(field))

    # ---------------- inspection ----------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        if self.num.is_zero():
            return self.field.zero()
        return self.num.coeffs[0] * self.field.inv(self.den.coeffs[0])

    def degree_at_infinity(self) -> int:
        """deg num - deg den: the Laurent degree of growth at infinity."""
        if self.is_zero():
            raise ValueError("zero function has no degree")
        return self.num.degree - self.den.degree

    def den_roots(self):
        """Verified (root, mult) factorization of the denominator, or None."""
        return self._roots

    # ---------------- arithmetic ----------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.field == self.field:
                return other
            return None
        v = self.field.coerce(other)
        if v is None:
            return None
        return RationalFunction.from_poly(self.field,
                                          Polynomial(self.field, [v]))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        try:
            num = self.num * o.den + o.num * self.den
            den = self.den * o.den
        except PrecisionLoss:
            if not isinstance(self.field, KField):
                raise
            # sums of rational functions telescope by design (partial
            # fractions, residue identities): heavy cancellation here is
            # the math, not a bug, so fall back to floor-lenient
            # arithmetic whose claims stay honest if thin
            num = _poly_add_lenient(_poly_mul_lenient(self.num, o.den),
                                    _poly_mul_lenient(o.num, self.den))
            den = _poly_mul_lenient(self.den, o.den)
        return RationalFunction._make(self.field, num, den,
                                      _merge_roots(self._roots, o._roots))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.field, -self.num, self.den, self._roots)

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
        try:
            num = self.num * o.num
            den = self.den * o.den
        except PrecisionLoss:
            if not isinstance(self.field, KField):
                raise
            num = _poly_mul_lenient(self.num, o.num)
            den = _poly_mul_lenient(self.den, o.den)
        return RationalFunction._make(self.field, num, den,
                                      _merge_roots(self._roots, o._roots))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        # poles of the inverse are the zeros of num, which we do not track
        roots = () if self.num.degree == 0 else None
        return RationalFunction._make(self.field, self.den, self.num, roots)

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
        if n < 0:
            return self.inverse() ** (-n)
        result = RationalFunction.constant(self.field, self.field.one())
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
        try:
            return (self.num * o.den) == (o.num * self.den)
        except PrecisionLoss:
            if not isinstance(self.field, KField):
                raise
            # the strict cross-product tripped the significance floor:
            # compare leniently, where "cannot certify the difference
            # nonzero" is what equality at working precision means
            lhs = _poly_mul_lenient(self.num, o.den)
            rhs = _poly_mul_lenient(o.num, self.den)
            return _polys_indistinguishable(lhs, rhs)

    __hash__ = None

    def derivative(self):
        num = self.num.derivative() * self.den - self.num * self.den.derivative()
        den = self.den * self.den
        roots = None
        if self._roots is not None:
            roots = tuple((r, m + 1) for r, m in self._roots)
        return RationalFunction._make(self.field, num, den, roots)

    def evaluate(self, x):
        dv = self.den.evaluate(x)
        if isinstance(dv, RationalFunction):
            if dv.is_zero():
                raise ZeroDivisionError("evaluation at a pole")
            return self.num.evaluate(x) / dv
        if self.field.is_zero(dv):
            raise ZeroDivisionError("evaluation at a pole")
        return self.num.evaluate(x) * self.field.inv(dv)

    def compose_mobius(self, a, b, c, d):
        """self((a z + b) / (c z + d)), with pole bookkeeping.

        Each tracked pole r of self pulls back to the root of
        (a - c r) z + (b - d r); a pole swallowed by infinity (a = c r)
        drops out, and the extra (c z + d) factor from clearing the
        substitution contributes the pole -d/c.
        """
        f = self.field
        a, b, c, d = (f.coerce(t) for t in (a, b, c, d))
        if f.is_zero(a * d - b * c):
            raise ValueError("degenerate substitution")
        zn = Polynomial(f, [b, a])              # a z + b
        zd = Polynomial(f, [d, c])              # c z + d
        q = max(self.num.degree, self.den.degree)
        num = _homogenize(self.num, zn, zd, q)
        den = _homogenize(self.den, zn, zd, q)
        roots = None
        if self._roots is not None:
            roots = []
            for r, m in self._roots:
                lead = a - c * r
                if not f.is_zero(lead):
                    roots.append(((d * r - b) * f.inv(lead), m))
            if not f.is_zero(c) and q > self.den.degree:
                roots.append((-(d * f.inv(c)), q - self.den.degree))
            roots = tuple(roots)
        return RationalFunction._make(f, num, den, roots)

    def __repr__(self):
        return f"RationalFunction({self.num!r} / {self.den!r})"


def _homogenize(p: Polynomial, zn: Polynomial, zd: Polynomial, q: int):
    """sum p_i zn^i zd^(q-i) (zero coefficients multiply through: see
    Polynomial.__mul__ on why their uncertainty must not be dropped)."""
    f = p.field
    acc = Polynomial(f, [])
    for i, coeff in enumerate(p.coeffs):
        acc = acc + coeff * (zn ** i) * (zd ** (q - i))
    return acc


def _merge_roots(r1, r2):
    if r1 is None or r2 is None:
        return None
    return tuple(r1) + tuple(r2)


def _refit_roots(field, candidates, den: Polynomial):
    """Recompute multiplicities of candidate roots against den by trial
    division; return verified (root, mult) covering den fully, else None.

    None also stands for "verification itself fell below certifiable
    precision": tracking honestly degrades to unknown rather than keeping
    a claim nobody checked."""
    try:
        distinct = []
        for r, _ in candidates:
            if not any(field.eq(r, s) for s, _ in distinct):
                distinct.append((r, 0))
        residual = den
        out = []
        for r, _ in distinct:
            lin = Polynomial(field, [-r, field.one()])
            m = 0
            while residual.degree >= 1:
                q, rem = divmod(residual, lin)
                if not rem.is_zero():
                    break
                residual = q
                m += 1
            if m:
                out.append((r, m))
        if residual.degree != 0:
            return None
        return tuple(out)
    except PrecisionLoss:
        return None


def linear_power(field, c0, c1, k: int) -> RationalFunction:
    """(c0 + c1 z)^k as a rational function with tracked poles (k may be < 0)."""
    f = field
    c0, c1 = f.coerce(c0), f.coerce(c1)
    base = Polynomial(f, [c0, c1])
    if base.is_zero():
        raise ZeroDivisionError("zero linear form")
    if k >= 0:
        return RationalFunction.from_poly(f, base ** k)
    if f.is_zero(c1):
        return RationalFunction.constant(f, f.inv(c0) ** (-k))
    # (c0 + c1 z)^k = c1^k (z - root)^k with root = -c0/c1; den kept monic
    root = -(c0 * f.inv(c1))
    den = Polynomial(f, [-root, f.one()]) ** (-k)
    numc = f.inv(c1) ** (-k)
    return RationalFunction._make(f, Polynomial(f, [numc]), den,
                                  ((root, -k),))


# ============================================================= root finding

def padic_roots(g: Polynomial, max_depth: int = None):
    """All roots of g in F = Q_p (coefficients must lie in F), with
    multiplicities.  Complete at working precision: every residue branch
    that could contain a root is explored, negative-valuation roots come
    from the reversed polynomial, and multiplicities are recovered by
    trial division against g itself."""
    field = g.field
    if not isinstance(field, KField):
        raise IrreduciblePole("root search runs over K only")
    params = field.params
    if g.is_zero():
        raise ValueError("root search on the zero polynomial")
    if g.degree == 0:
        return []
    if max_depth is None:
        max_depth = params.base_m + 4
    # square-free part: roots show up simply, multiplicities by division
    # (skipped when the reduction falls below certifiable precision; the
    # DFS handles repeated roots too, only less cheaply)
    try:
        sq = poly_gcd(g, g.derivative())
        gsf = g // sq if sq.degree > 0 else g
    except PrecisionLoss:
        gsf = g
    gpsf = gsf.derivative()
    found = [_cap_root(gsf, gpsf, r) for r in _integral_roots(gsf, max_depth)]
    rev = gsf.reversed()
    if rev.degree > 0:
        revp = rev.derivative()
        for s in _integral_roots(rev, max_depth):
            v = s.valuation()
            if v is not None and v > 0:
                found.append(_cap_root(rev, revp, s).inverse())
    out = []
    for r in found:
        if any(r.add_lenient(-r2).is_zero() for r2, _ in out):
            continue
        m, residual = 0, g
        while residual.degree >= 1:
            q, vanishes = _div_linear(residual, r)
            if not vanishes:
                break
            residual = q
            m += 1
        if m:
            out.append((r, m))
    return out


def _find_integral_root(g: Polynomial, max_depth: int):
    """One root of g in Z_p by digit DFS with Newton cutover, or None.

    A branch survives to depth k only if its residue kills g mod p^k, so a
    true root's digit path stays alive while spurious paths are pruned
    within finitely many levels; v(g) >= max_depth counts as a root at
    working depth (exactness-at-precision, like everything else here)."""
    field = g.field
    params = field.params
    p = params.p
    gp = g.derivative()
    stack = [(0, 0)]       # (residue, depth): candidate root mod p^depth
    while stack:
        r, k = stack.pop()
        x = PadicScalar.from_int(params, r)
        fx = _eval_at(g, x)
        vf = None if fx is None else _v_f(fx)
        if vf is not None and vf < k:
            continue                      # not a root modulo p^k: prune
        if vf is None or vf >= max_depth:
            return x                      # root to full working depth
        dfx = _eval_at(gp, x)
        vdf = None if dfx is None else _v_f(dfx)
        if vdf is not None and vf > 2 * vdf:
            return _newton(g, gp, x, max_depth)
        step = p ** k
        for t in reversed(range(p)):
            stack.append((r + t * step, k + 1))
    return None


def _v_f(x: PadicScalar):
    """Valuation in p-units (entries known to be in F)."""
    v = x.valuation()
    if v is None:
        return None
    return v // x.params.e


def _eval_at(g: Polynomial, x):
    """g(x), or None when cancellation leaves the value indistinguishable
    from zero at the coefficients' working precision.

    Finite-precision coefficients (deflation quotients, content-normalized
    forms) cap how small a nonzero evaluation can still be certified; past
    that cap the value is zero as far as this field can tell, and for root
    hunting that reads as "converged"."""
    try:
        return g.evaluate(x)
    except PrecisionLoss:
        return None


def _eval_lenient(g: Polynomial, x):
    """Horner evaluation with floor-lenient adds: never raises, result is
    correct at its (possibly heavily decayed) claimed precision."""
    acc = g.field.zero()
    for c in reversed(g.coeffs):
        acc = c.add_lenient(acc * x)
    return acc


def _cap_root(g: Polynomial, gp: Polynomial, r):
    """Polish r by exact-representative Newton steps, then reduce its
    precision claim to the depth its roothood is certified.

    For a simple root, v(x - root) >= v(g(x)) - v(g'(x)).  Iterating Newton
    on interval claims converges in *digits* faster than the claims can
    follow (every fx/dfx division spends v(g') digits of claim), so raw
    candidates arrive sound but needlessly thin -- thin enough that two
    p-adically close roots stop being distinguishable.  Polishing lifts the
    digits found so far to an exact representative, re-evaluates with
    full-claim arithmetic, and keeps whichever iterate certifies deepest;
    the final cap rests on that one exact evaluation plus the bound above,
    never on propagated interval claims."""
    params = g.field.params

    def certify(x):
        fx = _eval_lenient(g, x)
        vf = _v_f(fx)
        if vf is None:
            vf = fx.abs_prec() // params.e   # zero to its claimed modulus
        dfx = _eval_lenient(gp, x)
        vdf = _v_f(dfx)
        if vdf is None:
            # derivative indistinguishable from zero: it may vanish as deep
            # as its own blind spot, and the bound must be charged for that
            vdf = max(dfx.abs_prec() // params.e, 0)
        return vf - vdf, fx, dfx

    best, depth = r, None
    cur = r
    for _ in range(12):
        x = cur.lift_digits()
        d, fx, dfx = certify(x)
        if depth is None or d > depth:
            best, depth = x, d
        else:
            break              # stalled: junk digits beyond the certificate
        if fx.is_zero() or dfx.is_zero():
            break              # no further Newton step can be formed
        cur = x.add_lenient(-(fx / dfx))
    return best.capped_abs(params.e * max(depth, 1))


def _div_linear_rem(g: Polynomial, r):
    """Synthetic division of g by the monic linear (z - r): (quotient,
    remainder scalar).  All adds floor-lenient (see _div_linear)."""
    field = g.field
    a = g.coeffs
    n = len(a) - 1
    q = [None] * n
    acc = a[n]
    for k in range(n - 1, -1, -1):
        q[k] = acc
        acc = a[k].add_lenient(acc * r)
    return Polynomial(field, q), acc


def _div_linear(g: Polynomial, r):
    """Synthetic division of g by the monic linear (z - r).

    Returns (quotient, remainder_vanishes).  The adds are floor-lenient:
    when r is a root known only to working precision, the remainder -- and
    sometimes a quotient coefficient -- is *expected* to be a heavy
    cancellation, and "indistinguishable from zero at the coefficients'
    precision" is exactly the verdict wanted, not an error."""
    quotient, acc = _div_linear_rem(g, r)
    if acc.is_zero():
        vanishes = True
    else:
        sig = acc.abs_prec() - acc.valuation()
        vanishes = sig < g.field.params.floor
    return quotient, vanishes


def _taylor_lenient(g: Polynomial, a):
    """Coefficients of g(u + a) by repeated synthetic division (K only).

    Equivalent to g.shift(a), but every add is floor-lenient, so heavy
    cancellation in the shifted coefficients degrades claims instead of
    raising."""
    coeffs = []
    cur = g
    while cur.degree >= 1:
        cur, rem = _div_linear_rem(cur, a)
        coeffs.append(rem)
    coeffs.append(cur.coeffs[0] if cur.coeffs else g.field.zero())
    return coeffs


def _poly_mul_lenient(a: Polynomial, b: Polynomial) -> Polynomial:
    """Convolution product with floor-lenient coefficient sums (K only)."""
    if a.is_zero() or b.is_zero():
        return Polynomial(a.field, [])
    out = [a.field.zero()] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ca in enumerate(a.coeffs):
        for j, cb in enumerate(b.coeffs):
            out[i + j] = out[i + j].add_lenient(ca * cb)
    return Polynomial(a.field, out)


def _poly_add_lenient(a: Polynomial, b: Polynomial) -> Polynomial:
    """Coefficient-wise sum with floor-lenient adds (K only)."""
    field = a.field
    n = max(len(a.coeffs), len(b.coeffs))
    out = []
    for k in range(n):
        ca = a.coeffs[k] if k < len(a.coeffs) else field.zero()
        cb = b.coeffs[k] if k < len(b.coeffs) else field.zero()
        out.append(ca.add_lenient(cb))
    return Polynomial(field, out)


def _polys_indistinguishable(a: Polynomial, b: Polynomial) -> bool:
    """True when no coefficient of a - b is certifiably nonzero (K only)."""
    field = a.field
    floor = field.params.floor
    n = max(len(a.coeffs), len(b.coeffs))
    for k in range(n):
        ca = a.coeffs[k] if k < len(a.coeffs) else field.zero()
        cb = b.coeffs[k] if k < len(b.coeffs) else field.zero()
        d = ca.add_lenient(-cb)
        if d.is_zero():
            continue
        if d.abs_prec() - d.valuation() >= floor:
            return False
    return True


def _healthy(g: Polynomial) -> bool:
    """Are g's coefficients still precise enough to certify roots against?

    Lenient deflation can hand back low-precision quotients; hunting roots
    in those would accept anything.  A root hunted here gets its claim
    capped to roughly (abs - floor) digits, so the bar is the point where
    that claim stops meaning anything: twice the significance floor."""
    params = g.field.params
    bar = 2 * params.e * max(params.floor, 1)
    return all(c.abs_prec() >= bar for c in g.coeffs if not c.is_zero())


def _integral_roots(g: Polynomial, max_depth: int):
    """All roots of a squarefree g in Z_p: find one, deflate, repeat.

    Deflation (rather than collecting every live DFS branch) is what makes
    two roots sharing a long digit prefix both show up: the first found
    root is divided out, so the second stops being shadowed by it."""
    field = g.field
    params = field.params
    p = params.p
    roots = []
    while g.degree >= 1 and _healthy(g):
        # normalize to integral content-1 coefficients
        vals = [_v_f(c) for c in g.coeffs if not c.is_zero()]
        shift = -min(v for v in vals if v is not None)
        gn = g.scale(PadicScalar.from_int(params, p) ** shift)
        r = _find_integral_root(gn, max_depth)
        if r is None:
            break
        # cap the claim *before* deflating: digits of r beyond the
        # certified depth are noise, and folding noise into the quotient
        # would poison every later comparison against it
        r = _cap_root(gn, gn.derivative(), r)
        roots.append(r)
        g, _ = _div_linear(g, r)
    return roots


def _newton(g, gp, x, max_depth):
    for _ in range(max_depth):
        fx = _eval_at(g, x)
        v = None if fx is None else _v_f(fx)
        if v is None or v >= max_depth:
            return x
        dfx = _eval_at(gp, x)
        if dfx is None or dfx.is_zero():
            return x                      # cannot sharpen further
        x = x - fx / dfx
    return x


def f_line_roots(den: Polynomial):
    """(roots, cofactor): all F-roots of a denominator over K, with
    multiplicities, plus the F-rootless cofactor.

    Splits den = sum_t pi^t D_t with D_t over F; an F-point kills den iff it
    kills every component, so the F-roots are the Q_p-roots of gcd(D_t)."""
    field = den.field
    if not isinstance(field, KField):
        raise IrreduciblePole("component split needs K coefficients")
    e = field.params.e
    g = Polynomial(field, [])
    for t in range(e):
        comp = Polynomial(field,
                          [c.f_components()[t] for c in den.coeffs])
        if all(field.is_zero(cc) for cc in comp.coeffs):
            # a component indistinguishable from zero imposes no visible
            # constraint on the candidate roots; the division certificate
            # against den itself below is what actually admits a root
            continue
        # content-normalize (exact pi-power scale) rather than monic: a
        # lead with deep valuation would shift the other coefficients'
        # absolute claims below the root hunter's health bar
        g = _val_normalize(comp) if g.is_zero() else poly_gcd(g, comp)
    if g.is_zero() or g.degree == 0:
        return [], den
    pairs = []
    cofactor = den
    for r, _ in padic_roots(g):
        m = 0
        while cofactor.degree >= 1:
            q, vanishes = _div_linear(cofactor, r)
            if not vanishes:
                break
            cofactor = q
            m += 1
        if m:
            pairs.append((r, m))
    return pairs, cofactor


# ============================================================ local expansion

def _series_inv(field, qs, k: int, lenient: bool = False):
    """First k coefficients of 1 / (q0 + q1 u + ...), q0 a unit."""
    def add(x, y):
        return x.add_lenient(y) if lenient else x + y
    inv0 = field.inv(qs[0])
    out = [inv0]
    for i in range(1, k):
        s = field.zero()
        for j in range(1, i + 1):
            qj = qs[j] if j < len(qs) else field.zero()
            s = add(s, qj * out[i - j])
        out.append(-(s * inv0))
    return out


def principal_part(f: RationalFunction, a, mult: int = None):
    """Coefficients [c_1, ..., c_k] of the expansion
    sum c_j (z - a)^(-j) of f at the pole a (k = multiplicity)."""
    field = f.field
    a = field.coerce(a)
    if isinstance(field, KField):
        if mult is not None:
            # trust the caller's count (it came from the same lenient
            # divisibility notion; recounting against a different
            # residual can flip verdicts sitting exactly on the floor)
            k, q = 0, f.den
            while k < mult and q.degree >= 1:
                q, _ = _div_linear(q, a)
                k += 1
        else:
            # a may be a root known only to working precision: lenient
            # division, "remainder indistinguishable from zero" divides
            k, q = 0, f.den
            while q.degree >= 1:
                qq, vanishes = _div_linear(q, a)
                if not vanishes:
                    break
                q = qq
                k += 1
    else:
        lin = Polynomial(field, [-a, field.one()])
        k, q = 0, f.den
        while q.degree >= 1:
            qq, rem = divmod(q, lin)
            if not rem.is_zero():
                break
            q = qq
            k += 1
        if mult is not None and mult != k:
            raise ValueError(
                "claimed multiplicity does not divide the denominator")
    if k == 0:
        return []
    lenient = isinstance(field, KField)
    if lenient:
        n_shift = _taylor_lenient(f.num, a)
        q_shift = _taylor_lenient(q, a)
    else:
        n_shift = f.num.shift(a).coeffs
        q_shift = q.shift(a).coeffs
    inv_q = _series_inv(field, list(q_shift), k, lenient=lenient)
    t = []
    for i in range(k):
        s = field.zero()
        for j in range(i + 1):
            nj = n_shift[j] if j < len(n_shift) else field.zero()
            term = nj * inv_q[i - j]
            s = s.add_lenient(term) if lenient else s + term
        t.append(s)
    # f = T(u)/u^k: the (z-a)^(-j) coefficient is t_{k-j}
    return [t[k - j] for j in range(1, k + 1)]


def residue_at(f: RationalFunction, a):
    """Residue of f dz at the finite point a."""
    parts = principal_part(f, a)
    if not parts:
        return f.field.zero()
    return parts[0]


def residue_at_infinity(f: RationalFunction):
    """Residue of f dz at infinity, normalized so that the residues of
    (Z - z)^(-1) dz sum to zero over P^1:  Res_inf (Z - z)^(-1) dz = +1."""
    field = f.field
    if f.is_zero():
        return field.zero()
    dn, dd = f.num.degree, f.den.degree
    w = Polynomial.variable(field)
    num_rev = f.num.reversed()
    den_rev = f.den.reversed()
    # g(w) = f(1/w) / w^2 = w^(dd - dn - 2) num_rev / den_rev
    k = dd - dn - 2
    if k >= 0:
        g = RationalFunction._make(field, num_rev * (w ** k), den_rev)
    else:
        g = RationalFunction._make(field, num_rev, den_rev * (w ** (-k)))
    return -residue_at(g, field.zero())


def partial_fractions(f: RationalFunction):
    """(polynomial_part, [(pole, [c_1..c_k]), ...]) over the F-line.

    Raises IrreduciblePole if the denominator has factors without F-roots
    (poles off the rational boundary cannot be expanded here)."""
    field = f.field
    if not isinstance(field, KField):
        raise IrreduciblePole("partial fractions run over K only")
    poly_part, rem = divmod(f.num, f.den)
    roots, cofactor = f_line_roots(f.den)
    if cofactor.degree > 0:
        raise IrreduciblePole(
            "denominator has irreducible factors over the F-line")
    out = []
    for r, m in roots:
        out.append((r, principal_part(f, r, m)))
    return poly_part, out
