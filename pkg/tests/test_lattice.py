import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclomod import lattice as lat


def random_unimodular(rng, m, steps=12):
    g = lat.identity_matrix(m)
    gens = lat.gl_generators(m)
    for _ in range(steps):
        g = lat.mat_mul(g, rng.choice(gens))
    return g


def test_is_extended_basis_basic():
    e1, e2 = (1, 0), (0, 1)
    assert lat.is_extended_basis([e1, e2, (-1, -1)])
    assert not lat.is_extended_basis([e1, (0, 2), (-1, -2)])
    assert lat.is_extended_basis(
        [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (-1, -1, -1, -1)]
    )


def test_extended_basis_rank_mismatch():
    with pytest.raises(lat.RankMismatch):
        lat.is_extended_basis([(1, 0), (0, 1, 0), (-1, -1)])


@given(st.integers(0, 2**32 - 1), st.integers(2, 4))
@settings(max_examples=25, deadline=None)
def test_omitting_any_vector_of_extended_basis_gives_basis(seed, m):
    rng = random.Random(seed)
    g = random_unimodular(rng, m)
    vs = list(lat.mat_columns(g))
    vs.append(lat.vec_neg(lat.vec_sum(vs)))
    assert lat.is_extended_basis(vs)
    for i in range(m + 1):
        rest = [v for j, v in enumerate(vs) if j != i]
        assert lat.is_unimodular(lat.mat_from_columns(rest))


def test_coset_label_identity():
    for m in (2, 3):
        g = lat.identity_matrix(m)
        assert lat.coset_label(g, 7) == tuple([0] * (m - 1) + [1])


def test_coset_label_count_prime():
    # |M_m(p)| = p^m - 1
    assert len(lat.coset_space(2, 5)) == 24
    assert len(lat.coset_space(3, 3)) == 26
    assert len(lat.coset_space(2, 4)) == 12  # composite: gcd condition


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_coset_label_constant_on_cosets(seed):
    rng = random.Random(seed)
    m, N = 3, 5
    g = random_unimodular(rng, m)
    # gamma in Gamma_1(m;N): last row = (0,..,0,1) mod N
    gamma = random_unimodular(rng, m)
    while lat.coset_label(gamma, N) != (0,) * (m - 1) + (1,):
        gamma = random_unimodular(rng, m)
    assert lat.coset_label(lat.mat_mul(gamma, g), N) == lat.coset_label(g, N)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_act_coset_is_right_action(seed):
    rng = random.Random(seed)
    m, N = 2, 7
    g, h = random_unimodular(rng, m), random_unimodular(rng, m)
    lab = tuple(rng.randrange(N) for _ in range(m))
    assert lat.act_coset(lat.act_coset(lab, g, N), h, N) == lat.act_coset(
        lab, lat.mat_mul(g, h), N
    )
    assert lat.act_coset(lab, lat.identity_matrix(m), N) == lab


def test_act_coset_swap():
    assert lat.act_coset((0, 1), ((0, 1), (1, 0)), 5) == (1, 0)


def test_orbit_of_unit_vector_is_everything():
    for m, p in ((2, 3), (2, 5), (3, 2)):
        orb = lat.coset_orbit((0,) * (m - 1) + (1,), m, p)
        assert len(orb) == p**m - 1


def test_act_sym_identity_and_degree_zero():
    p = {(2, 0, 0): Fraction(1), (1, 1, 0): Fraction(-2)}
    assert lat.act_sym(lat.identity_matrix(3), p) == p
    const = {(0, 0): Fraction(5)}
    g = ((2, 1), (1, 1))
    assert lat.act_sym(g, const) == const


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=15, deadline=None)
def test_act_sym_associative(seed):
    rng = random.Random(seed)
    m = 3
    g, h = random_unimodular(rng, m, 6), random_unimodular(rng, m, 6)
    p = {e: Fraction(rng.randint(-3, 3)) for e in lat.monomials(m, 2)}
    p = {e: c for e, c in p.items() if c}
    lhs = lat.act_sym(lat.mat_mul(g, h), p)
    rhs = lat.act_sym(g, lat.act_sym(h, p))
    assert lhs == rhs


def test_det_character():
    assert lat.det_character(lat.identity_matrix(4)) == 1
    d = tuple(
        tuple((-1 if i == j == 0 else int(i == j)) for j in range(3)) for i in range(3)
    )
    assert lat.det_character(d) == -1


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=20, deadline=None)
def test_det_character_multiplicative(seed):
    rng = random.Random(seed)
    g, h = random_unimodular(rng, 3), random_unimodular(rng, 3)
    assert lat.det_character(lat.mat_mul(g, h)) == lat.det_character(
        g
    ) * lat.det_character(h)


def test_sign_vector():
    assert lat.sign_vector((-1, 2)) == (1, -2)
    assert lat.sign_vector((0, 3)) == (0, 3)
    with pytest.raises(ValueError):
        lat.sign_vector((0, 0))


def test_saturation_basis():
    sat = lat.saturation_basis([(2, 0, 2), (0, 2, 2)])
    # Q-span is {z : z_1 + z_2 = z_3}; saturation contains (1, 1, 2)/... i.e.
    # (1, 0, 1) and (0, 1, 1).
    assert len(sat) == 2
    coords = lat.coordinates_in_basis(sat, (1, 0, 1))
    assert all(c.denominator == 1 for c in coords)
    coords = lat.coordinates_in_basis(sat, (1, 1, 2))
    assert all(c.denominator == 1 for c in coords)


def test_mat_inverse_unimodular_is_integral():
    rng = random.Random(0)
    for _ in range(10):
        g = random_unimodular(rng, 4)
        inv = lat.mat_inverse(g)
        assert lat.mat_mul(g, inv) == lat.identity_matrix(4)
        assert all(isinstance(x, int) for row in inv for x in row)
