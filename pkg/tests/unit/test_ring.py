import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from src.algebra.ring import EntryClass, RingElem, RingMatrix, chi, classify_entry, kron, parse_poly
from src.utils.errors import InputError

LIFTS = st.sampled_from([1, 2, 3, 5, 7])


@st.composite
def ring_matrices(draw, l=None, rows=None, cols=None):
    l = l or draw(LIFTS)
    rows = rows or draw(st.integers(1, 3))
    cols = cols or draw(st.integers(1, 3))
    bits = draw(st.lists(st.integers(0, 2**l - 1), min_size=rows * cols, max_size=rows * cols))
    return RingMatrix(l, [[RingElem(l, bits[i * cols + j]) for j in range(cols)] for i in range(rows)])


def test_parse_poly_reads_seed_entries():
    e = parse_poly("x^13+x^16", 17)
    assert e.exponents() == [13, 16]
    assert str(e) == "x^13+x^16"
    assert parse_poly("x^3", 3) == RingElem.one(3)
    assert parse_poly("1+1", 5).is_zero()
    assert parse_poly(" 1 + x ", 3).exponents() == [0, 1]


@pytest.mark.parametrize("text", ["", "x^", "2x", "1++x", "x^2 x", "y"])
def test_parse_poly_rejects_bad_text(text):
    with pytest.raises(InputError):
        parse_poly(text, 5)


def test_chi_annihilates_even_weight_elements():
    assert (chi(7) * parse_poly("1+x", 7)).is_zero()
    assert (chi(7) * parse_poly("x^2+x^5", 7)).is_zero()
    assert chi(7) * RingElem.one(7) == chi(7)


def test_involution_reverses_exponents():
    e = parse_poly("1+x+x^3", 5)
    assert e.involution().exponents() == [0, 2, 4]
    assert e.involution().involution() == e


def test_classify_entry():
    assert classify_entry(RingElem.zero(3)) is EntryClass.ZERO
    assert classify_entry(parse_poly("x", 3)) is EntryClass.MONOMIAL
    assert classify_entry(parse_poly("1+x^2", 3)) is EntryClass.BINOMIAL
    assert classify_entry(parse_poly("1+x+x^2", 3)) is EntryClass.OTHER


def test_mixed_lift_sizes_are_rejected():
    with pytest.raises(InputError):
        RingElem.one(3) + RingElem.one(5)
    with pytest.raises(InputError):
        RingMatrix.identity(2, 3) @ RingMatrix.identity(2, 5)


@hypothesis_settings(max_examples=1000, deadline=None)
@given(ring_matrices())
def test_conj_transpose_lifts_to_transpose(m):
    assert m.conj_transpose().binary_lift() == m.binary_lift().T


@given(st.data())
def test_binary_lift_is_multiplicative(data):
    l = data.draw(LIFTS)
    inner = data.draw(st.integers(1, 3))
    a = data.draw(ring_matrices(l=l, cols=inner))
    b = data.draw(ring_matrices(l=l, rows=inner))
    assert (a @ b).binary_lift() == a.binary_lift() @ b.binary_lift()


@given(st.data())
def test_binary_lift_is_additive(data):
    l = data.draw(LIFTS)
    a = data.draw(ring_matrices(l=l, rows=2, cols=2))
    b = data.draw(ring_matrices(l=l, rows=2, cols=2))
    assert (a + b).binary_lift() == a.binary_lift() + b.binary_lift()


def test_lift_of_monomial_is_a_cyclic_shift():
    block = RingElem.monomial(1, 3).lift()
    assert np.array_equal(block, np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]]))


def test_kron_orders_rows_a_major():
    a = RingMatrix.from_bits([[1], [0]], 3)
    b = RingMatrix.from_strings([["x", "1"]], 3)
    product = kron(a, b)
    assert product.shape == (2, 2)
    assert product.to_strings() == [["x", "1"], ["0", "0"]]


def test_zero_one_conversion():
    m = RingMatrix.from_bits([[1, 0], [0, 1]], 5)
    assert m == RingMatrix.identity(2, 5)
    assert m.to_bits().tolist() == [[1, 0], [0, 1]]
    with pytest.raises(InputError):
        RingMatrix.from_strings([["1+x"]], 5).to_bits()
