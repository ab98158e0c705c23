import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclomod.exact_linalg import (
    NotAComplexError,
    PresentedSpace,
    SparseMatrix,
    WellDefinednessError,
    complex_cohomology,
    induced_map,
    kernel_basis,
    rank,
)


def dense_rank_oracle(M: SparseMatrix) -> int:
    """Naive dense Gaussian elimination over Fractions."""
    A = [[M[(i, j)] for j in range(M.cols)] for i in range(M.rows)]
    r = 0
    for c in range(M.cols):
        piv = None
        for i in range(r, M.rows):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pv = A[r][c]
        for i in range(M.rows):
            if i != r and A[i][c]:
                f = A[i][c] / pv
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
    return r


def random_matrix(rng, rows, cols, density=0.35):
    ent = {}
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                ent[(i, j)] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return SparseMatrix(rows, cols, ent)


def test_rank_trivial():
    assert rank(SparseMatrix.zero(3, 3)) == 0
    assert rank(SparseMatrix.identity(3)) == 3


def test_rank_rectangular():
    M = SparseMatrix(1, 2, {(0, 0): 1, (0, 1): 1})
    assert rank(M) == 1


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_rank_matches_dense_oracle_and_transpose(seed):
    rng = random.Random(seed)
    M = random_matrix(rng, rng.randint(1, 8), rng.randint(1, 8))
    r = rank(M)
    assert r == dense_rank_oracle(M)
    assert r == rank(M.transpose())


def test_kernel_identity_empty():
    assert kernel_basis(SparseMatrix.identity(2)) == []


def test_kernel_one_one():
    M = SparseMatrix(1, 2, {(0, 0): 1, (0, 1): 1})
    (v,) = kernel_basis(M)
    # single vector proportional to (1, -1)
    assert M.apply(v) == {}
    assert v[1] / v[0] == Fraction(-1) if 0 in v else True


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_kernel_dimension_and_membership(seed):
    rng = random.Random(seed)
    M = random_matrix(rng, rng.randint(1, 7), rng.randint(1, 7))
    basis = kernel_basis(M)
    assert len(basis) == M.cols - rank(M)
    for v in basis:
        assert M.apply(v) == {}


def test_presented_space_dims():
    s = PresentedSpace(list("abcde"))
    assert s.dim() == 5
    s2 = PresentedSpace(list("abcde"), [{lab: 1} for lab in "abcde"])
    assert s2.dim() == 0


def test_presented_space_row_shuffle_invariance():
    rng = random.Random(7)
    labels = list(range(6))
    rows = [
        {0: 1, 1: -1},
        {1: 2, 2: 1, 3: Fraction(1, 2)},
        {0: 1, 2: 1},
        {4: 3, 5: -3},
    ]
    d0 = PresentedSpace(labels, rows).dim()
    for _ in range(5):
        rng.shuffle(rows)
        assert PresentedSpace(labels, rows).dim() == d0


def test_project_and_reduce():
    s = PresentedSpace(["x", "y"], [{"x": 1, "y": -1}])
    assert s.dim() == 1
    assert s.is_relation({"x": 2, "y": -2})
    p = s.project({"x": 1})
    q = s.project({"y": 1})
    assert p == q and len(p) == 1


def test_induced_map_identity():
    s = PresentedSpace(["a", "b"], [{"a": 1, "b": 1}])
    t = PresentedSpace(["a", "b"], [{"a": 1, "b": 1}])
    M = induced_map(s, t, lambda lab: {lab: 1})
    assert M == SparseMatrix.identity(1)


def test_induced_map_rejects_ill_defined():
    s = PresentedSpace(["a", "b"], [{"a": 1, "b": -1}])
    t = PresentedSpace(["a", "b"])
    with pytest.raises(WellDefinednessError):
        induced_map(s, t, {"a": {"a": 1}, "b": {"b": 1}})


def test_complex_cohomology_id_and_zero():
    ident = SparseMatrix.identity(1)
    zero = SparseMatrix.zero(1, 1)
    assert complex_cohomology([ident]) == [0, 0]
    assert complex_cohomology([zero]) == [1, 1]


def test_complex_cohomology_rejects_nonzero_composite():
    d0 = SparseMatrix.identity(2)
    d1 = SparseMatrix.identity(2)
    with pytest.raises(NotAComplexError):
        complex_cohomology([d0, d1])


def test_text_round_trip():
    M = SparseMatrix(2, 3, {(0, 1): Fraction(3, 2), (1, 0): -2})
    assert SparseMatrix.from_text(M.to_text()) == M
    Z = SparseMatrix.zero(0, 0)
    assert Z.to_text().strip() == "0 0"
    assert SparseMatrix.from_text(Z.to_text()) == Z
