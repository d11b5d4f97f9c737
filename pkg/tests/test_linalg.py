from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import matrices
from halfder.linalg import (
    LinalgError,
    Matrix,
    block_diag,
    cokernel,
    hstack,
    kernel_basis,
    rank,
    rational,
    rref,
    solve,
    vstack,
)


def to_sympy(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix(m.rows, m.cols, lambda i, j: sympy.Rational(int(m[i, j].numerator), int(m[i, j].denominator)))


# worked examples


def test_rref_identity():
    red, piv, r = rref(Matrix.identity(3))
    assert red == Matrix.identity(3) and piv == (0, 1, 2) and r == 3


def test_rref_zero():
    z = Matrix.zeros(2, 3)
    red, piv, r = rref(z)
    assert red == z and piv == () and r == 0


def test_rref_rank_one():
    red, piv, r = rref(Matrix(2, 2, [[1, 2], [2, 4]]))
    assert red == Matrix(2, 2, [[1, 2], [0, 0]])
    assert r == 1


def test_kernel_of_invertible_is_empty():
    assert kernel_basis(Matrix(2, 2, [[1, 1], [0, 1]])).cols == 0


def test_kernel_of_row_vector():
    k = kernel_basis(Matrix(1, 2, [[1, 0]]))
    assert k == Matrix(2, 1, [[0], [1]])


def test_kernel_of_no_constraints():
    assert kernel_basis(Matrix.zeros(0, 3)) == Matrix.identity(3)


def test_cokernel_examples():
    assert cokernel(Matrix.identity(3))[1] == 0
    P, d = cokernel(Matrix(2, 1, [[1], [0]]))
    assert d == 1
    assert P @ Matrix(2, 1, [[1], [0]]) == Matrix.zeros(1, 1)
    assert P @ Matrix(2, 1, [[0], [1]]) != Matrix.zeros(1, 1)
    assert cokernel(Matrix.zeros(0, 2))[1] == 0


def test_solve_examples():
    M = Matrix(2, 2, [[2, 1], [1, 1]])
    B = Matrix(2, 1, [[3], [2]])
    assert solve(M, B) == M.inverse() @ B
    assert solve(Matrix.zeros(1, 1), Matrix(1, 1, [[1]])) is None
    assert solve(Matrix(1, 2, [[1, 1]]), Matrix(1, 1, [[3]])) == Matrix(2, 1, [[3], [0]])


def test_rational_coercion():
    assert rational("3/6") == rational(Fraction(1, 2))
    assert rational(" -2 ") == rational(-2)
    with pytest.raises(LinalgError):
        rational(0.5)
    with pytest.raises(LinalgError):
        rational("1/0")


def test_shape_errors():
    with pytest.raises(LinalgError):
        Matrix(2, 2, [[1, 2]])
    with pytest.raises(LinalgError):
        Matrix.identity(2) @ Matrix.identity(3)
    with pytest.raises(LinalgError):
        Matrix(1, 2, [[1, 1]]).inverse()


def test_empty_matrices_compose():
    a = Matrix.zeros(3, 0)
    b = Matrix.zeros(0, 2)
    assert a @ b == Matrix.zeros(3, 2)
    assert Matrix.identity(0).is_invertible()


def test_stacking():
    a, b = Matrix(1, 1, [[1]]), Matrix(1, 2, [[2, 3]])
    assert hstack([a, b]) == Matrix(1, 3, [[1, 2, 3]])
    assert vstack([b, b]).shape == (2, 2)
    assert block_diag([a, b]) == Matrix(2, 3, [[1, 0, 0], [0, 2, 3]])


# properties, against sympy as an independent oracle


@given(matrices())
def test_rank_matches_oracle(m):
    assert rank(m) == to_sympy(m).rank()


@given(matrices())
def test_rref_matches_oracle(m):
    red, piv, _ = rref(m)
    if m.rows and m.cols:
        want, want_piv = to_sympy(m).rref()
        assert to_sympy(red) == want
        assert piv == tuple(want_piv)


@given(matrices())
def test_rref_idempotent(m):
    red = rref(m)[0]
    assert rref(red)[0] == red


@given(matrices())
def test_rank_nullity(m):
    k = kernel_basis(m)
    assert rank(m) + k.cols == m.cols
    assert (m @ k).is_zero()
    assert rank(k) == k.cols


@given(matrices())
def test_cokernel_dimension(m):
    P, d = cokernel(m)
    assert d == m.rows - rank(m)
    assert (P @ m).is_zero()
    assert rank(P) == d


@given(matrices(max_rows=4, max_cols=4), st.integers(0, 3))
def test_solve_is_exact(m, k):
    import random

    rng = random.Random(k)
    x0 = Matrix(m.cols, 2, [[rng.randint(-3, 3) for _ in range(2)] for _ in range(m.cols)])
    b = m @ x0
    x = solve(m, b)
    assert x is not None and m @ x == b


@given(matrices(rows=3, cols=3))
def test_inverse_when_invertible(m):
    if m.is_invertible():
        assert (m @ m.inverse()).is_identity()
    else:
        assert to_sympy(m).det() == 0


@given(matrices(max_rows=3, max_cols=3), matrices(max_rows=3, max_cols=3))
def test_kron_mixed_product(a, b):
    # (A (x) B)(A^T (x) B^T) = (A A^T) (x) (B B^T)
    lhs = a.kron(b) @ a.T.kron(b.T)
    assert lhs == (a @ a.T).kron(b @ b.T)


@given(matrices(), matrices())
def test_transpose_of_product(a, b):
    if a.cols == b.rows:
        assert (a @ b).T == b.T @ a.T


def test_strings_round_trip():
    m = Matrix(2, 2, [[Fraction(1, 2), -3], [0, Fraction(7, 3)]])
    assert Matrix.from_strings(2, 2, m.to_strings()) == m
