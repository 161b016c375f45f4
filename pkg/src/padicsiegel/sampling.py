"""Seeded exact samplers.

Symplectic elements are products of bounded generators (both unipotent
families, the torus, and the Weyl element), so every sample satisfies
tg J g = J exactly -- randomness never has to be "projected back" onto the
group.  All draws go through an explicit random.Random so identical seeds
give identical objects.
"""

from __future__ import annotations

import random

from .linalg import KMatrix, inverse
from .padic import FieldParams, PadicScalar
from .symplectic import PPair, standard_form


def random_unit(params: FieldParams, rng: random.Random,
                depth: int = 4, ramified: bool = False) -> PadicScalar:
    """A unit of the valuation ring with `depth` random digits.

    By default the unit is F-rational (group elements live over F);
    ramified=True spreads digits over all pi-components of K.
    """
    p, e = params.p, params.e
    comps = [0] * e
    if ramified:
        comps = [rng.randrange(p ** depth) for _ in range(e)]
    else:
        comps[0] = rng.randrange(p ** depth)
    comps[0] = comps[0] * p + rng.randrange(1, p)
    return PadicScalar.from_components(params, comps)


def random_scalar(params: FieldParams, rng: random.Random,
                  vmin: int = 0, vmax: int = 4,
                  ramified: bool = False) -> PadicScalar:
    """unit * pi^v with v drawn uniformly from [vmin, vmax]."""
    v = rng.randint(vmin, vmax)
    return random_unit(params, rng, ramified=ramified) * PadicScalar.pi(params, v)


def random_int_symmetric(params: FieldParams, n: int, rng: random.Random,
                         bound: int = 50) -> KMatrix:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = rng.randint(-bound, bound)
    return KMatrix(params, a)


def random_gl(params: FieldParams, n: int, rng: random.Random,
              integral: bool = True) -> KMatrix:
    """Invertible n x n: unipotent * diagonal * unipotent (exactly invertible)."""
    up = KMatrix(params, [[1 if i == j else (rng.randint(-20, 20) if i < j else 0)
                           for j in range(n)] for i in range(n)])
    lo = KMatrix(params, [[1 if i == j else (rng.randint(-20, 20) if i > j else 0)
                           for j in range(n)] for i in range(n)])
    diag = KMatrix.diag(params, [
        random_unit(params, rng) *
        PadicScalar.pi(params, 0 if integral else rng.randint(-2, 2))
        for _ in range(n)])
    return up @ diag @ lo


def random_symplectic(params: FieldParams, n: int, rng: random.Random,
                      length: int = None, integral: bool = True) -> KMatrix:
    """Seeded element of Sp(2n): a word in exact generators.

    integral=True keeps all entries in the valuation ring (torus entries are
    units), so the bottom rows always form an integral primitive pair.
    """
    i_n = KMatrix.identity(params, n)
    z_n = KMatrix.zeros(params, n, n)
    g = KMatrix.identity(params, 2 * n)
    L = length if length is not None else rng.randint(2, 5)
    for _ in range(L):
        kind = rng.randrange(4)
        if kind == 0:
            s = random_int_symmetric(params, n, rng)
            f = KMatrix.block2(i_n, s, z_n, i_n)
        elif kind == 1:
            s = random_int_symmetric(params, n, rng)
            f = KMatrix.block2(i_n, z_n, s, i_n)
        elif kind == 2:
            h = random_gl(params, n, rng, integral=integral)
            f = KMatrix.block2(h, z_n, z_n, inverse(h.T))
        else:
            f = standard_form(params, n)
        g = g @ f
    return g


def perturb_off_group(g: KMatrix, rng: random.Random) -> KMatrix:
    """Tweak one entry so the result is (almost surely) not symplectic."""
    n2 = g.nrows
    i, j = rng.randrange(n2), rng.randrange(n2)
    bump = PadicScalar.from_int(g.params, rng.randint(1, 5))
    rows = [list(r) for r in g.rows]
    rows[i][j] = rows[i][j] + bump
    return KMatrix(g.params, rows)


def random_coisotropic_pair(params: FieldParams, n: int,
                            rng: random.Random) -> PPair:
    """Integral primitive coisotropic pair: (0, I) moved by a random
    integral symplectic element."""
    z, i = KMatrix.zeros(params, n, n), KMatrix.identity(params, n)
    g = random_symplectic(params, n, rng, integral=True)
    return PPair(z, i).act(g)


def random_siegel_point_rank1(params: FieldParams, rng: random.Random) -> KMatrix:
    """1 x 1 point with fractional-valuation entry: unit * pi^(+-1).

    Needs e even to make the valuation genuinely fractional over F; with
    e = 2 these all lie in the first affinoid shell.
    """
    v = rng.choice([-1, 1])
    u = random_unit(params, rng, ramified=True)
    return KMatrix(params, [[u * PadicScalar.pi(params, v)]])


def random_siegel_point(params: FieldParams, n: int, rng: random.Random,
                        spread: int = 0) -> KMatrix:
    """Diagonal fractional-valuation points, optionally conjugated by a
    unipotent translation (which preserves every shell membership)."""
    if n == 1:
        Z = random_siegel_point_rank1(params, rng)
    else:
        e = params.e
        vals = []
        for k in range(n):
            v = e // (n + 1) ** (k + 1)
            u = random_unit(params, rng, ramified=True)
            vals.append(PadicScalar.pi(params, v) * u)
        Z = KMatrix.diag(params, vals)
    if spread:
        s = random_int_symmetric(params, n, rng, bound=spread)
        Z = Z + s
    return Z
