import random

import pytest
from hypothesis import given, strategies as st

from topinv.chains import SparseMatrix, boundary_matrix
from topinv.errors import RingError
from topinv.generators import boundary_simplex, rp2_6
from topinv.rings import GF2, QQ, ZZ
from topinv.smith import ImageSolver, column_space_member, determinant, rank, snf
from topinv.chains import Chain

from oracles import field_rank, invariant_factors_from_minors, sympy_invariants

small_matrices = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=m, max_size=m)))


def test_examples():
    assert snf(SparseMatrix.from_dense(ZZ, [[2, 0], [0, 3]])).invariant_factors == [1, 6]
    assert snf(SparseMatrix.identity(ZZ, 4)).invariant_factors == [1, 1, 1, 1]
    assert snf(SparseMatrix(ZZ, 3, 3)).invariant_factors == []


def test_rp2_boundary_factors():
    res = snf(boundary_matrix(rp2_6(), 2, ZZ))
    # rank 10: H_2 = 0 and the single 2 is the torsion of H_1
    assert res.invariant_factors == [1] * 9 + [2]
    assert rank(boundary_matrix(rp2_6(), 2, GF2)) == 9
    assert rank(boundary_matrix(boundary_simplex(1), 1, QQ)) == 2


def test_snf_requires_integers():
    with pytest.raises(RingError):
        snf(SparseMatrix.identity(QQ, 2))


@given(small_matrices)
def test_against_minor_oracle(rows):
    res = snf(SparseMatrix.from_dense(ZZ, rows))
    assert res.invariant_factors == invariant_factors_from_minors(rows)
    assert all(b % a == 0 for a, b in zip(res.invariant_factors, res.invariant_factors[1:]))


@given(small_matrices)
def test_tracking(rows):
    A = SparseMatrix.from_dense(ZZ, rows)
    res = snf(A, track=True)
    U, V = res.U(), res.V()
    assert U @ A @ V == res.D()
    assert abs(determinant(U.to_dense())) == 1 and abs(determinant(V.to_dense())) == 1
    assert U @ res.U_inv() == SparseMatrix.identity(ZZ, A.nrows)
    assert V @ res.V_inv() == SparseMatrix.identity(ZZ, A.ncols)


@given(small_matrices, st.sampled_from([None, 2, 3, 5]))
def test_field_rank(rows, p):
    from topinv.rings import PrimeField
    ring = QQ if p is None else PrimeField(p)
    assert rank(SparseMatrix.from_dense(ring, rows)) == field_rank(rows, p)


def test_larger_matrices_against_sympy():
    rng = random.Random(7)
    for _ in range(20):
        m, n = rng.randint(5, 14), rng.randint(5, 14)
        rows = [[rng.choice([0, 0, 0, 1, -1, 2, 3]) for _ in range(n)] for _ in range(m)]
        assert snf(SparseMatrix.from_dense(ZZ, rows)).invariant_factors == sympy_invariants(rows)


def test_determinant():
    assert determinant([[2, 0], [0, 3]]) == 6
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([]) == 1


def test_image_membership():
    K = boundary_simplex(3)
    M = boundary_matrix(K, 2, ZZ)
    v = Chain.from_faces(K, ZZ, 2, [(0, 1, 2)]).boundary().to_vector()
    x = column_space_member(M, v)
    assert x is not None and M.matvec(x) == v
    assert column_space_member(M, [0] * M.nrows) == [0] * M.ncols

    R = rp2_6()
    gen = Chain(R, ZZ, 1, {(0, 1): -1, (0, 4): 1, (1, 5): -1, (4, 5): 1})
    assert gen.boundary().is_zero()
    solver = ImageSolver(boundary_matrix(R, 2, ZZ))
    assert not solver.contains(gen.to_vector())
    assert solver.contains(gen.scale(2).to_vector())
