import pytest

from gradcon.linalg import (
    DimensionError, Q, SparseMatrix, Subspace, equal, intersect, kernel, rank, rref, solve, span,
    subspace_sum,
)


def test_rref_and_kernel_trivial():
    I3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert kernel(I3).dim == 0
    R, r = rref([[0, 0], [0, 0]])
    assert r == 0


def test_rref_pivots_leftmost():
    R, r = rref([[0, 2, 4], [1, 1, 1]])
    assert r == 2
    assert R[0] == [1, 0, -1] and R[1] == [0, 1, 2]


def test_kernel_vectors_are_annihilated():
    M = [[1, 2, 3, 4], [2, 4, 6, 8], [1, 0, 1, 0]]
    K = kernel(M)
    assert K.dim == 2
    for v in K.basis:
        assert all(sum(Q(a) * b for a, b in zip(row, v)) == 0 for row in M)


def test_solve():
    M = [[1, 1], [1, -1]]
    x = solve(M, [3, 1])
    assert x == [2, 1]
    assert solve([[1, 1], [2, 2]], [1, 3]) is None


def test_subspace_operations():
    U = span([[1, 0, 0], [0, 1, 0]])
    V = span([[0, 0, 1]])
    assert intersect(U, U) == U
    assert subspace_sum(U, V) == Subspace.full(3)
    assert intersect(U, V).dim == 0
    W = span([[1, 1, 0], [0, 1, 0]])
    assert equal(U, W)


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        intersect(Subspace.full(2), Subspace.full(3))


def test_sparse_matrix():
    A = SparseMatrix.from_dense([[1, 0], [0, 0]])
    assert A.nnz == 1
    B = SparseMatrix.identity(2)
    assert (A @ B) == A
    assert (B - B).nnz == 0
    assert A.matvec([3, 4]) == [3, 0]
    assert rank([[1, 2], [2, 4]]) == 1
