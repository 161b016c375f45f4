import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padicsiegel import FieldParams, NotInU0, PadicScalar
from padicsiegel.linalg import KMatrix, det, inverse
from padicsiegel.sampling import (
    perturb_off_group,
    random_coisotropic_pair,
    random_siegel_point_rank1,
    random_symplectic,
)
from padicsiegel.symplectic import (
    PPair,
    automorphy,
    blocks,
    compound_matrix,
    gram_schmidt_complete,
    is_symplectic,
    mobius,
    scalar_pair,
    sigma1_matrix,
    sigma_r_matrix,
    standard_form,
    sym_basis,
    sym_coords,
    symplectic_report,
    u0_assemble,
    u0_decompose,
)

P52 = FieldParams(p=5, e=2)
P51 = FieldParams(p=5, e=1)
P22 = FieldParams(p=2, e=2)


def test_standard_form_is_symplectic():
    for P, n in [(P51, 1), (P52, 2), (P22, 2)]:
        J = standard_form(P, n)
        assert is_symplectic(J)
        assert all(symplectic_report(J).values())


def test_diagonal_torus_example():
    # diag(2, 1, 1/2, 1) lies in Sp(4, Q_5)
    g = KMatrix.diag(P51, [2, 1, Fraction(1, 2), 1])
    assert is_symplectic(g)


def test_report_flags_broken_relations():
    g = KMatrix(P51, [[1, 3], [0, 1]])  # symplectic in Sp(2)
    assert is_symplectic(g)
    bad = KMatrix(P51, [[1, 3], [0, 2]])  # det 2 != 1
    assert not is_symplectic(bad)
    rep = symplectic_report(bad)
    assert not all(rep.values())
    assert rep["tA.C symmetric"]  # 1x1 symmetry never breaks


def test_right_action_moves_base_pair_to_minus_identity():
    for P, n in [(P51, 1), (P51, 2)]:
        z, i = KMatrix.zeros(P, n, n), KMatrix.identity(P, n)
        moved = PPair(z, i).act(standard_form(P, n))
        assert moved.X == -i and moved.Y == z


@given(st.integers(0, 10 ** 6), st.sampled_from([1, 2]))
@settings(max_examples=40, deadline=None)
def test_group_law_and_inverse_formula(seed, n):
    rng = random.Random(seed)
    g = random_symplectic(P51, n, rng)
    h = random_symplectic(P51, n, rng)
    assert is_symplectic(g) and is_symplectic(h)
    assert is_symplectic(g @ h)
    # symplectic inverse: g^-1 = J^-1 tg J
    J = standard_form(P51, n)
    ginv = inverse(J) @ g.T @ J
    assert (g @ ginv) == KMatrix.identity(P51, 2 * n)


@given(st.integers(0, 10 ** 6), st.sampled_from([1, 2]))
@settings(max_examples=40, deadline=None)
def test_perturbation_leaves_group(seed, n):
    rng = random.Random(seed)
    g = perturb_off_group(random_symplectic(P51, n, rng), rng)
    rep = symplectic_report(g)
    assert is_symplectic(g) == all(rep.values())


# ---------------------------------------------------------------- big cell

def test_u0_decompose_weyl_element():
    J = standard_form(P51, 1)
    z1, h, z2 = u0_decompose(J)
    assert z1.is_zero() and z2.is_zero()
    assert h[0, 0] == -1
    assert u0_assemble(z1, h, z2) == J


def test_u0_rejects_upper_triangular():
    g = KMatrix(P51, [[1, 3], [0, 1]])
    with pytest.raises(NotInU0):
        u0_decompose(g)


@given(st.integers(0, 10 ** 6), st.sampled_from([1, 2]))
@settings(max_examples=60, deadline=None)
def test_u0_reassembly(seed, n):
    rng = random.Random(seed)
    g = random_symplectic(P51, n, rng)
    _, _, C, _ = blocks(g)
    if det(C).is_zero():
        return
    z1, h, z2 = u0_decompose(g)
    assert z1.is_symmetric() and z2.is_symmetric()
    assert u0_assemble(z1, h, z2) == g


# ---------------------------------------------------------------- completion

def test_completion_of_base_pairs():
    for n in (1, 2):
        z, i = KMatrix.zeros(P51, n, n), KMatrix.identity(P51, n)
        assert gram_schmidt_complete(PPair(z, i)) == KMatrix.identity(P51, 2 * n)
        g = gram_schmidt_complete(PPair(i, z))
        assert g == -standard_form(P51, n)


@given(st.integers(0, 10 ** 6), st.sampled_from([1, 2]))
@settings(max_examples=60, deadline=None)
def test_completion_random_pairs(seed, n):
    rng = random.Random(seed)
    pair = random_coisotropic_pair(P22, n, rng)
    assert pair.is_valid() and pair.is_primitive()
    g = gram_schmidt_complete(pair)
    assert is_symplectic(g)
    _, _, C, D = blocks(g)
    assert C == pair.X and D == pair.Y


# ---------------------------------------------------------------- action upstairs

def one_by_one(P, x):
    return KMatrix(P, [[x]])


@given(st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_cocycle_rank1(seed):
    rng = random.Random(seed)
    g1 = random_symplectic(P22, 1, rng)
    g2 = random_symplectic(P22, 1, rng)
    Z = random_siegel_point_rank1(P22, rng)
    lhs = automorphy(g1 @ g2, Z)
    rhs = automorphy(g1, mobius(g2, Z)) @ automorphy(g2, Z)
    assert lhs == rhs
    assert mobius(g1 @ g2, Z) == mobius(g1, mobius(g2, Z))


def test_weyl_acts_by_negative_inverse():
    Z = KMatrix(P22, [[PadicScalar.pi(P22)]])
    assert mobius(standard_form(P22, 1), Z) == -inverse(Z)
    rng = random.Random(7)
    g = random_symplectic(P22, 2, rng, integral=True)
    Zs = KMatrix.diag(P22, [PadicScalar.pi(P22, 1), PadicScalar.pi(P22, -1)])
    assert mobius(standard_form(P22, 2), Zs) == -inverse(Zs)


def test_unipotent_translates():
    s = KMatrix(P22, [[3, 1], [1, -2]])
    i2, z2 = KMatrix.identity(P22, 2), KMatrix.zeros(P22, 2, 2)
    u = KMatrix.block2(i2, s, z2, i2)
    Z = KMatrix.diag(P22, [PadicScalar.pi(P22, 1), PadicScalar.pi(P22, -1)])
    assert mobius(u, Z) == Z + s
    assert automorphy(u, Z) == i2


def test_mobius_differential_identity():
    # g(Z + E) - g(Z) = tj^-1 E j^-1 + O(pi^(2 v(E) - c)): check at a deep E
    rng = random.Random(3)
    P = FieldParams(p=2, e=2, precision=80)
    g = random_symplectic(P, 2, rng, integral=True)
    Z = KMatrix.diag(P, [PadicScalar.pi(P, 1), PadicScalar.pi(P, -1)])
    k = 20
    E = KMatrix(P, [[PadicScalar.pi(P, k), 0], [0, PadicScalar.pi(P, k + 1)]])
    j = automorphy(g, Z)
    ji = inverse(j)
    diff = mobius(g, Z + E) - mobius(g, Z)
    lin = ji.T @ E @ ji
    err = diff - lin
    floor = 2 * k - 8
    for r in err.rows:
        for x in r:
            v = x.valuation()
            assert v is None or v >= floor


# ---------------------------------------------------------------- sigma reps

def test_sigma1_rank1_is_square():
    rng = random.Random(1)
    for _ in range(5):
        x = PadicScalar.from_int(P51, rng.randint(1, 100))
        h = one_by_one(P51, x)
        assert sigma1_matrix(h) == one_by_one(P51, x * x)


def test_sigma1_diagonal_example():
    h = KMatrix.diag(P51, [2, 3])
    s = sigma1_matrix(h)
    # basis dZ11, dZ12, dZ22 -> weights a^2, ab, b^2
    assert s == KMatrix.diag(P51, [4, 6, 9])


@given(st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_sigma1_multiplicative(seed):
    rng = random.Random(seed)
    from padicsiegel.sampling import random_gl
    h1 = random_gl(P51, 2, rng)
    h2 = random_gl(P51, 2, rng)
    assert sigma1_matrix(h1 @ h2) == sigma1_matrix(h1) @ sigma1_matrix(h2)
    # compounds inherit multiplicativity (Cauchy-Binet)
    for r in (1, 2, 3):
        assert sigma_r_matrix(h1 @ h2, r) == \
            sigma_r_matrix(h1, r) @ sigma_r_matrix(h2, r)


def test_sigma_top_is_determinant_character():
    rng = random.Random(9)
    from padicsiegel.sampling import random_gl
    h = random_gl(P51, 2, rng)
    top = sigma_r_matrix(h, 3)
    assert top.shape == (1, 1)
    assert top[0, 0] == det(sigma1_matrix(h))
    assert top[0, 0] == det(h) ** 3  # det of sigma1 on 2x2 symmetrics


def test_sigma1_matches_conjugation_on_coordinates():
    rng = random.Random(21)
    from padicsiegel.sampling import random_gl, random_int_symmetric
    h = random_gl(P51, 2, rng)
    S = random_int_symmetric(P51, 2, rng)
    assert sigma1_matrix(h) @ sym_coords(S) == sym_coords(h @ S @ h.T)
    assert [(0, 0), (0, 1), (1, 1)] == sym_basis(2)
