import pytest
from hypothesis import given, strategies as st

from topinv.chains import (Chain, Cochain, SparseMatrix, boundary_matrix, coboundary_matrix,
                           format_chain, incidence_coefficient)
from topinv.errors import NotAFaceError
from topinv.generators import boundary_simplex, builtin, cp2_9, random_complex, rp2_6
from topinv.rings import GF2, QQ, ZZ, PrimeField, parse_ring
from topinv.errors import RingError

from oracles import boundary_dense


def test_incidence_signs():
    assert incidence_coefficient((1, 2), (0, 1, 2)) == 1
    assert incidence_coefficient((0, 2), (0, 1, 2)) == -1
    assert incidence_coefficient((0, 1), (0, 1, 2)) == 1
    with pytest.raises(NotAFaceError):
        incidence_coefficient((0, 3), (0, 1, 2))


def test_rings():
    assert parse_ring("z") is ZZ and parse_ring("Q") is QQ
    assert parse_ring("zp:7") == PrimeField(7)
    with pytest.raises(RingError, match="p must be prime"):
        parse_ring("zp:4")
    assert GF2.normalize(-3) == 1
    assert PrimeField(7).inv(3) * 3 % 7 == 1


def test_rp2_boundary_matches_table():
    K = rp2_6()
    D2 = boundary_matrix(K, 2, ZZ).transpose().to_dense()
    assert D2[0] == [1, -1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]     # 012
    assert D2[1] == [1, 0, 0, -1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0]     # 014
    D1 = boundary_matrix(K, 1, ZZ).to_dense()
    assert D1[0] == [-1, -1, -1, -1, -1] + [0] * 10
    assert coboundary_matrix(K, 1, ZZ) == boundary_matrix(K, 2, ZZ).transpose()


def test_cp2_top_boundary_shape():
    M = boundary_matrix(cp2_9(), 4, ZZ)
    assert M.shape == (90, 36)
    assert all(len(M.column_entries(j)) == 5 for j in range(36))
    assert coboundary_matrix(cp2_9(), 4, ZZ).shape == (0, 36)


def test_small_shapes():
    M = boundary_matrix(builtin("boundary_simplex:1"), 1, ZZ)
    assert M.shape == (3, 3)
    for j in range(3):
        assert sorted(M.column_entries(j).values()) == [-1, 1]
    d0 = coboundary_matrix(builtin("simplex:1"), 0, ZZ)
    assert d0.to_dense() == [[-1, 1]]


@pytest.mark.parametrize("ring", [ZZ, QQ, GF2, PrimeField(3)])
@pytest.mark.parametrize("name", ["rp2_6", "cp2_9", "s2xs2", "ck:3", "cylinder"])
def test_dd_zero(name, ring):
    K = builtin(name)
    for k in range(1, K.dim):
        assert (boundary_matrix(K, k, ring) @ boundary_matrix(K, k + 1, ring)).is_zero()


@given(st.integers(0, 5000))
def test_boundary_against_dense_oracle(seed):
    K = random_complex(seed)
    for k in range(1, K.dim + 1):
        assert boundary_matrix(K, k, ZZ).to_dense() == boundary_dense(K.faces(k), K.faces(k - 1))


def test_chain_algebra_and_format():
    K = rp2_6()
    c = Chain.from_faces(K, ZZ, 2, [(0, 1, 2)])
    assert format_chain(c.boundary()) == "{0 1} - {0 2} + {1 2}"
    assert c.boundary().boundary().is_zero()
    assert (c + c - c.scale(2)).is_zero()
    f = Cochain.from_faces(K, ZZ, 0, [(0,)])
    assert format_chain(f) == "{0}*"
    assert f.coboundary()((0, 1)) == -1
    with pytest.raises(NotAFaceError):
        Chain(K, ZZ, 2, {(0, 1, 3): 1})


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=4))
def test_dump_load_roundtrip(rows):
    M = SparseMatrix.from_dense(ZZ, rows)
    assert SparseMatrix.load(M.dump()) == M
    assert M.transpose().transpose() == M


def test_dump_load_rational():
    from fractions import Fraction
    M = SparseMatrix.from_dense(QQ, [[Fraction(1, 3), 0], [0, 2]])
    assert SparseMatrix.load(M.dump()) == M
