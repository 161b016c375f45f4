"""Rational-function models of the SL(2) series representations.

Two one-parameter families act on rational functions by Mobius substitution
with a power of the automorphy factor as weight:

* the weight ``-s`` action ``pi_s`` on functions of the Siegel coordinate
  ``Z`` (holomorphic model), whose interesting invariant subspace is spanned
  by ``1`` and the pole powers ``(Z - z)^(-s)``, ``z`` in the base field;
* the weight ``+s`` action ``T_s`` on test functions of ``z`` (principal
  series model), restricted here to its rational elements -- every identity
  checked downstream is first proved on those spanning elements.

The module also houses the pole-window membership test for the span above,
the Laurent degree at infinity that cuts out the weight-``s`` test space,
and the ``(s+1)``-fold differentiation intertwiner between the weight ``s``
and weight ``-s-2`` models (Casselman's operator for SL(2)), including its
factorial identity on pole powers.

Everything is exact: inputs are rational functions over the p-adic field or
over the rational-function tower, and every equality downstream is decided
by cross-multiplied polynomial comparison at working precision.
"""

from dataclasses import dataclass
from math import factorial

from .linalg import KMatrix
from .ratfunc import (
    Polynomial,
    RationalFunction,
    linear_power,
    partial_fractions,
)

__all__ = [
    "PartialFractionForm",
    "casselman",
    "in_D_s",
    "in_N0_s",
    "laurent_degree_at_infinity",
    "mobius_value",
    "automorphy_value",
    "phi_basis",
    "pi_s_act",
    "psi_basis",
    "partial_fraction_form",
    "T_s_act",
]


# ------------------------------------------------------------ group inputs

def _sl2_parts(g, field):
    """Validate a 2x2 determinant-1 matrix and coerce its entries.

    Accepts a KMatrix or any nested pair structure; entries land in the
    coefficient field of the rational function being acted on (scalars for
    the p-adic field, constants for the rational-function tower)."""
    if isinstance(g, KMatrix):
        if g.shape != (2, 2):
            raise ValueError("expected a 2x2 matrix")
        raw = (g[0, 0], g[0, 1], g[1, 0], g[1, 1])
    else:
        (a, b), (c, d) = g
        raw = (a, b, c, d)
    vals = []
    for t in raw:
        v = field.coerce(t)
        if v is None:
            raise TypeError(f"cannot coerce {type(t).__name__} into the "
                            "coefficient field")
        vals.append(v)
    a, b, c, d = vals
    det = a * d - b * c
    if not field.eq(det, field.one()):
        raise ValueError("matrix is not in SL(2) at working precision")
    return a, b, c, d


# ----------------------------------------------------------------- actions

def pi_s_act(s: int, g, psi: RationalFunction) -> RationalFunction:
    """Weight ``-s`` action on functions of the Siegel coordinate:

        (pi_s(g) psi)(Z) = (-cZ + a)^(-s) * psi((dZ - b) (-cZ + a)^(-1))

    for g = [[a, b], [c, d]] of determinant 1.  Equivalently
    ``j(g^-1, Z)^(-s) * psi(g^-1 Z)`` with ``j(g, Z) = cZ + d``, so this is
    a left action: pi_s(g1 g2) = pi_s(g1) pi_s(g2)."""
    f = psi.field
    a, b, c, d = _sl2_parts(g, f)
    moved = psi.compose_mobius(d, -b, -c, a)
    return linear_power(f, a, -c, -s) * moved


def T_s_act(s: int, g, phi: RationalFunction) -> RationalFunction:
    """Weight ``+s`` action on test functions (principal series model):

        (T_s(g) phi)(z) = (-cz + a)^s * phi((dz - b) (-cz + a)^(-1)).

    Same substitution as :func:`pi_s_act` with the opposite weight sign;
    also a left action."""
    f = phi.field
    a, b, c, d = _sl2_parts(g, f)
    moved = phi.compose_mobius(d, -b, -c, a)
    return linear_power(f, a, -c, s) * moved


def mobius_value(g, Z, field):
    """The moved point g.Z = (aZ + b)(cZ + d)^(-1) in the coefficient field.

    Raises ZeroDivisionError when Z is sent to infinity."""
    a, b, c, d = _sl2_parts(g, field)
    Zv = field.coerce(Z)
    den = c * Zv + d
    if field.is_zero(den):
        raise ZeroDivisionError("point is sent to infinity")
    return (a * Zv + b) * field.inv(den)


def automorphy_value(g, Z, field):
    """The automorphy factor j(g, Z) = cZ + d in the coefficient field."""
    a, b, c, d = _sl2_parts(g, field)
    return c * field.coerce(Z) + d


# ------------------------------------------------------- spanning elements

def psi_basis(field, s: int, z) -> RationalFunction:
    """(Z - z)^(-s) as a rational function of Z.

    For s > 0 these pole powers, together with 1, span the smallest
    invariant subspace of the weight ``-s`` action containing 1."""
    return linear_power(field, -field.coerce(z), 1, -s)


def phi_basis(field, s: int, Z) -> RationalFunction:
    """(Z - z)^s as a rational function of z (Z is the parameter).

    These span the degree-``s`` test functions; under ``T_s`` they move by
    T_s(g) phi_Z = j(g, Z)^s * phi_{g.Z}."""
    return linear_power(field, field.coerce(Z), -1, s)


# --------------------------------------------------- partial fraction form

@dataclass(frozen=True)
class PartialFractionForm:
    """A rational function split over poles in the base field F.

    ``parts`` lists ``(pole, coeffs)`` where ``coeffs[j-1]`` multiplies
    ``(Z - pole)^(-j)``; the polynomial part carries everything else.
    Reassembly reproduces the original function exactly at working
    precision."""

    field: object
    poly_part: Polynomial
    parts: tuple

    def reassemble(self) -> RationalFunction:
        total = RationalFunction.from_poly(self.field, self.poly_part)
        for pole, coeffs in self.parts:
            for j, c in enumerate(coeffs, start=1):
                total = total + linear_power(self.field, -pole, 1, -j) * c
        return total


def partial_fraction_form(psi: RationalFunction) -> PartialFractionForm:
    """Split psi over its F-rational poles.

    Raises IrreduciblePole when the denominator has a factor with no root
    in F at working precision."""
    poly_part, parts = partial_fractions(psi)
    frozen = tuple((pole, tuple(coeffs)) for pole, coeffs in parts)
    return PartialFractionForm(psi.field, poly_part, frozen)


# ------------------------------------------------------------- memberships

def in_N0_s(s: int, psi) -> bool:
    """Pole-window membership for the span of 1 and (Z - z)^(-s), s > 0.

    A rational function lies in the span's partial-fraction model iff at
    every finite pole the coefficients of (Z - z_j)^i vanish for the window
    -s < i <= -1 -- pole orders jump straight to s or deeper.  The
    polynomial part is unconstrained (the span's closure absorbs it).
    Accepts a RationalFunction or a precomputed PartialFractionForm."""
    if s <= 0:
        raise ValueError("the pole-window test needs a positive weight")
    form = psi if isinstance(psi, PartialFractionForm) \
        else partial_fraction_form(psi)
    for _pole, coeffs in form.parts:
        for c in coeffs[:s - 1]:           # a_{-1} .. a_{-(s-1)}
            if not form.field.is_zero(c):
                return False
    return True


def laurent_degree_at_infinity(phi: RationalFunction):
    """Top exponent of the expansion at infinity: deg(num) - deg(den).

    Membership in the weight-``s`` test space requires this to be <= s.
    Returns None for the zero function (every membership is vacuous)."""
    if phi.is_zero():
        return None
    return phi.num.degree - phi.den.degree


def in_D_s(s: int, phi: RationalFunction) -> bool:
    """True when phi's expansion at infinity starts at exponent <= s."""
    deg = laurent_degree_at_infinity(phi)
    return deg is None or deg <= s


# ------------------------------------------------------------- intertwiner

def casselman(s: int, phi: RationalFunction) -> RationalFunction:
    """(s+1)-fold derivative, weight ``s`` model to weight ``-s-2`` model.

    Defined for s >= -1 (s = -1 is the identity).  On rational functions
    the kernel is exactly the polynomials of degree <= s, and the operator
    intertwines: casselman(s, T_s(g) phi) = T_{-s-2}(g) casselman(s, phi).
    On pole powers it is a factorial stretch:
    casselman(s-2, (Z - z)^(-1)) = (s-1)! * (Z - z)^(-s)."""
    if s < -1:
        raise ValueError("the intertwiner needs weight >= -1")
    out = phi
    for _ in range(s + 1):
        out = out.derivative()
    return out


def pole_power_stretch(s: int) -> int:
    """The factorial constant (s-1)! in the pole-power identity above."""
    if s < 1:
        raise ValueError("the stretch constant needs s >= 1")
    return factorial(s - 1)
