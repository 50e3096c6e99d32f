from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from signed_inertia import (
    H,
    Matrix,
    MatrixError,
    SymMat,
    charpoly_inertia,
    congruence,
    direct_sum,
    membership,
    parse,
    pin,
    principal_delete,
    sample,
    subdirect_sum,
)
from signed_inertia.corpus import EXAMPLE_MATRIX, fixture
from signed_inertia.exact_matrix import charpoly, format_matrix, kernel, parse_matrix, rank, solve

from conftest import rationals, sym_matrices


# -- pin against hand values and the characteristic polynomial

@pytest.mark.parametrize("A, expected", [
    (SymMat.zeros(2), (0, 0)),
    (H, (1, 1)),
    (EXAMPLE_MATRIX, (1, 2)),
    (SymMat([], 0), (0, 0)),
    (SymMat.diag([3, -1, 0, 2]), (2, 1)),
])
def test_pin_small_cases(A, expected):
    assert pin(A) == expected
    assert charpoly_inertia(A) == expected


def test_example_matrix_charpoly():
    # det(xI - A) = x^3 + 3x^2 - 5x - 3, frozen from the Faddeev-LeVerrier routine
    assert charpoly(EXAMPLE_MATRIX) == [1, 3, -5, -3]


@given(sym_matrices(max_size=6))
def test_pin_matches_charpoly(A):
    assert pin(A) == charpoly_inertia(A)


@given(sym_matrices(max_size=5))
def test_pin_rank_and_float_spectrum(A):
    p, q = pin(A)
    assert p + q == rank(A)
    if A.n:
        ev = np.linalg.eigvalsh(np.array(A.to_lists(), dtype=float))
        tol = 1e-7
        # only compare where floats are unambiguous
        if not np.any(np.abs(ev) < tol):
            assert (int((ev > 0).sum()), int((ev < 0).sum())) == (p, q)


def _invertible(n, data):
    while True:
        P = Matrix([[data.draw(st.integers(-3, 3)) for _ in range(n)] for _ in range(n)], (n, n))
        if rank(P) == n:
            return P


@given(sym_matrices(max_size=5), st.data())
def test_sylvester_invariance(A, data):
    P = _invertible(A.n, data)
    assert pin(congruence(A, P)) == pin(A)


@given(sym_matrices(max_size=5), st.integers(0, 5), st.data())
def test_congruence_never_raises_inertia(A, cols, data):
    P = Matrix([[data.draw(rationals) for _ in range(cols)] for _ in range(A.n)], (A.n, cols))
    assert pin(congruence(A, P)).leq(pin(A))


@given(sym_matrices(max_size=4), sym_matrices(max_size=4))
def test_direct_sum_adds_inertia(A, B):
    assert pin(direct_sum(A, B)) == pin(A) + pin(B)


@given(sym_matrices(min_size=1, max_size=4), sym_matrices(min_size=1, max_size=4), st.data())
def test_subdirect_sum_bounded_by_sum(A, B, data):
    k = data.draw(st.integers(0, min(A.n, B.n)))
    assert pin(subdirect_sum(A, B, k)).leq(pin(A) + pin(B))


@given(sym_matrices(min_size=1, max_size=5), st.data())
def test_principal_delete_interlaces(A, data):
    j = data.draw(st.integers(1, A.n))
    p, q = pin(A)
    p2, q2 = pin(principal_delete(A, j))
    assert p - 1 <= p2 <= p and q - 1 <= q2 <= q


# -- elementary operations

def test_congruence_examples():
    A = SymMat([[2, 1], [1, -3]])
    assert congruence(A, Matrix.identity(2)) == A
    assert congruence(A, Matrix.column([1, 0])) == SymMat([[2]])
    assert congruence(A, Matrix.zeros(2, 0)) == SymMat([], 0)
    with pytest.raises(MatrixError):
        congruence(A, Matrix.identity(3))


def test_direct_sum_of_two_h():
    assert pin(direct_sum(H, H)) == (2, 2)


def test_subdirect_sum_example():
    A = SymMat([[1, 2], [2, 3]])
    B = SymMat([[4, 5], [5, 6]])
    assert subdirect_sum(A, B, 1) == SymMat([[1, 2, 0], [2, 7, 5], [0, 5, 6]])
    assert subdirect_sum(A, B, 0) == direct_sum(A, B)
    with pytest.raises(MatrixError):
        subdirect_sum(A, B, 3)


def test_principal_delete_examples():
    assert principal_delete(SymMat([[4]]), 1) == SymMat([], 0)
    assert principal_delete(EXAMPLE_MATRIX, 3) == H
    assert principal_delete(EXAMPLE_MATRIX, 1) == SymMat([[0, -2], [-2, -3]])
    with pytest.raises(IndexError):
        principal_delete(H, 3)


def test_membership_examples():
    assert membership(EXAMPLE_MATRIX, fixture("path2_mixed"))
    assert not membership(SymMat([[1]]), parse("n 1"))
    assert not membership(SymMat([[0]]), parse("n 1\ne 1 1 o"))
    assert membership(SymMat([[0]]), parse("n 1\ne 1 1 o\ne 1 1 e"))
    with pytest.raises(MatrixError):
        membership(H, parse("n 3"))


def test_sample_respects_pattern():
    assert sample(parse("n 1"), [1, -1]) == SymMat([[0]])
    edge = parse("n 2\ne 1 2 o")
    for seed in range(10):
        A = sample(edge, [1, 2, -1, -2], rng_seed=seed)
        assert A[0, 1] in (1, 2) and A[0, 0] == 0
    both = parse("n 2\ne 1 2 o\ne 1 2 e")
    assert sample(both, [1, -1], branch={(1, 2): 0}) == SymMat.zeros(2)
    assert sample(both, [1, -1], rng_seed=3) == sample(both, [1, -1], rng_seed=3)
    with pytest.raises(ValueError):
        sample(edge, [1, 2], branch={(1, 2): -1})


def test_symmat_rejects_bad_input():
    with pytest.raises(MatrixError):
        SymMat([[1, 2], [3, 4]])
    with pytest.raises(TypeError):
        SymMat([[0.5]])


@given(sym_matrices(max_size=5))
def test_kernel_and_solve(A):
    for v in kernel(A):
        assert (A @ Matrix.column(v)).is_zero()
    assert len(kernel(A)) == A.n - rank(A)
    b = A @ Matrix.column([Fraction(i + 1) for i in range(A.n)])
    x = solve(A, b)
    assert x is not None and A @ x == b


def test_solve_inconsistent():
    assert solve(SymMat.zeros(2), Matrix.column([1, 0])) is None


@given(sym_matrices(max_size=4))
def test_matrix_text_round_trip(A):
    assert parse_matrix(format_matrix(A)) == A


def test_parse_matrix_errors():
    with pytest.raises(MatrixError):
        parse_matrix("1 2\n3 4")
    with pytest.raises(MatrixError):
        parse_matrix("m 2\n1 2\n2")
    assert parse_matrix("# note\nm 2\n1/2 3\n3 -4/6\n") == SymMat([[Fraction(1, 2), 3], [3, Fraction(-2, 3)]])
