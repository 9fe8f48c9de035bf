import galois
import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st
from hypothesis.extra.numpy import arrays

from src.algebra import gf2
from src.algebra.gf2 import BitMatrix
from src.surgery.connection import merged_kernel_dimension
from src.utils.errors import InputError

GF2 = galois.GF(2)


def bit_arrays(max_rows=12, max_cols=12):
    shapes = st.tuples(st.integers(1, max_rows), st.integers(1, max_cols))
    return arrays(np.uint8, shapes, elements=st.integers(0, 1))


@given(bit_arrays(max_cols=80))
def test_rank_matches_galois(bits):
    assert BitMatrix.from_array(bits).rank() == np.linalg.matrix_rank(GF2(bits))


@hypothesis_settings(max_examples=1000, deadline=None)
@given(bit_arrays())
def test_kernel_basis_is_a_basis_of_the_kernel(bits):
    m = BitMatrix.from_array(bits)
    kernel = gf2.kernel_basis(m)
    assert kernel.rows == m.cols - m.rank()
    if kernel.rows:
        assert (m @ kernel.T).is_zero()
        assert kernel.rank() == kernel.rows


@given(st.data())
def test_product_matches_integer_product(data):
    a = data.draw(bit_arrays())
    b = data.draw(arrays(np.uint8, (a.shape[1], data.draw(st.integers(1, 12))), elements=st.integers(0, 1)))
    expected = (a.astype(np.int64) @ b.astype(np.int64)) % 2
    assert np.array_equal((BitMatrix.from_array(a) @ BitMatrix.from_array(b)).to_array(), expected)


@hypothesis_settings(max_examples=200, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_block_kernel_dimension_identity(rows, cols, seed):
    rng = np.random.default_rng(seed)
    a = BitMatrix.random(rows, cols, rng)
    b = BitMatrix.random(rows, cols, rng)
    block = gf2.block2x2(a, b, None, a)
    direct = block.cols - block.rank()
    assert merged_kernel_dimension(a, b) == direct


def test_packing_keeps_columns_past_one_word(rng):
    bits = rng.integers(0, 2, size=(3, 130), dtype=np.uint8)
    m = BitMatrix.from_array(bits)
    assert m.shape == (3, 130)
    assert np.array_equal(m.to_array(), bits)
    assert np.array_equal(m.T.to_array(), bits.T)


def test_row_space_membership():
    space = BitMatrix.from_array([[1, 1, 0, 0], [0, 1, 1, 0]])
    assert gf2.row_space_contains(space, [1, 0, 1, 0])
    assert not gf2.row_space_contains(space, [0, 0, 0, 1])
    with pytest.raises(InputError):
        gf2.row_space_contains(space, [1, 0, 1])


def test_same_row_space_ignores_generators():
    a = BitMatrix.from_array([[1, 1, 0], [0, 1, 1]])
    b = BitMatrix.from_array([[1, 0, 1], [1, 1, 0], [0, 1, 1]])
    assert gf2.same_row_space(a, b)
    assert not gf2.same_row_space(a, BitMatrix.from_array([[1, 1, 1]]))


def test_cokernel_matrix_kernel_is_the_subspace():
    subspace = BitMatrix.from_array([[1, 1, 0, 0, 1], [0, 0, 1, 1, 1]])
    g = gf2.cokernel_matrix(subspace)
    assert gf2.same_row_space(gf2.kernel_basis(g), subspace)


def test_block2x2_fills_zero_blocks():
    a = BitMatrix.identity(2)
    b = BitMatrix.from_array([[1, 1, 1], [0, 1, 0]])
    d = BitMatrix.from_array([[1, 0, 1], [0, 0, 1], [1, 1, 1]])
    block = gf2.block2x2(a, b, None, d)
    assert block.shape == (5, 5)
    assert block.to_array()[2:, :2].sum() == 0
    with pytest.raises(InputError):
        gf2.block2x2(a, None, None, None)


def test_inverse_and_singular_matrix():
    a = BitMatrix.from_array([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    assert a @ a.inverse() == BitMatrix.identity(3)
    with pytest.raises(InputError):
        BitMatrix.from_array([[1, 1], [1, 1]]).inverse()


def test_stacking_rejects_mismatched_shapes():
    with pytest.raises(InputError):
        gf2.hstack(BitMatrix.zeros(2, 2), BitMatrix.zeros(3, 2))
    with pytest.raises(InputError):
        gf2.vstack(BitMatrix.zeros(2, 2), BitMatrix.zeros(2, 3))
