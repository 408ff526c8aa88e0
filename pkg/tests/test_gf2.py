import numpy as np
import pytest

from z2geo.gf2 import BitMatrix, BitVector, nullspace, rank, solve_affine

from .oracles import affine_solutions, span_rank


def test_vector_arithmetic():
    u = BitVector.from_entries([1, 0, 1, 1])
    v = BitVector.from_entries([0, 1, 1, 0])
    assert list(u + v) == [1, 1, 0, 1]
    assert u.dot(v) == 1
    assert u.weight == 3
    assert (u + u).is_zero()
    assert u.support() == [0, 2, 3]
    with pytest.raises(ValueError):
        u + BitVector.zeros(5)


def test_long_vectors_span_words():
    v = BitVector.unit(130, 129)
    assert v[129] == 1 and v[0] == 0
    assert len(v.words()) == 3
    assert BitVector.from_words(130, v.words()) == v


def test_identity_and_products():
    ident = BitMatrix.identity(70)
    assert ident.is_identity()
    m = BitMatrix.from_array(np.random.default_rng(1).integers(0, 2, (70, 70)))
    assert m @ ident == m
    assert ident @ m == m


def test_matmul_matches_dense():
    rng = np.random.default_rng(2)
    a = rng.integers(0, 2, (9, 67))
    b = rng.integers(0, 2, (67, 5))
    got = (BitMatrix.from_array(a) @ BitMatrix.from_array(b)).to_array()
    assert np.array_equal(got, a @ b % 2)


def test_transpose_roundtrip():
    a = np.random.default_rng(3).integers(0, 2, (13, 71))
    m = BitMatrix.from_array(a)
    assert np.array_equal(m.T.to_array(), a.T)
    assert m.T.T == m


@pytest.mark.parametrize("seed", range(20))
def test_rank_against_span_size(seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 2, (rng.integers(1, 9), rng.integers(1, 9)))
    assert rank(BitMatrix.from_array(a)) == span_rank(a)


def test_nullspace_is_kernel():
    rng = np.random.default_rng(5)
    a = rng.integers(0, 2, (4, 9))
    m = BitMatrix.from_array(a)
    ns = nullspace(m)
    assert len(ns) == 9 - rank(m)
    for v in ns:
        assert (m @ v).is_zero()


@pytest.mark.parametrize("seed", range(30))
def test_solve_affine_against_enumeration(seed):
    rng = np.random.default_rng(100 + seed)
    rows, cols = rng.integers(1, 6), rng.integers(1, 8)
    a = rng.integers(0, 2, (rows, cols))
    rhs = rng.integers(0, 2, rows)
    brute = set(affine_solutions(a, rhs))
    sol = solve_affine(BitMatrix.from_array(a), BitVector.from_entries(rhs))
    if not brute:
        assert sol is None
        return
    assert sol is not None
    assert sol.count == len(brute)
    assert {tuple(v) for v in sol} == brute


def test_inconsistent_system():
    a = BitMatrix.from_rows([[1, 0], [1, 0]])
    assert solve_affine(a, BitVector.from_entries([1, 0])) is None


def test_bad_shapes_rejected():
    with pytest.raises(ValueError):
        solve_affine(BitMatrix.identity(3), BitVector.zeros(2))
    with pytest.raises(ValueError):
        BitMatrix.identity(2) @ BitMatrix.identity(3)


def test_symmetry_and_diagonal():
    m = BitMatrix.from_rows([[0, 1], [1, 1]])
    assert m.is_symmetric()
    assert list(m.diagonal()) == [0, 1]
    assert not BitMatrix.from_rows([[0, 1], [0, 0]]).is_symmetric()
