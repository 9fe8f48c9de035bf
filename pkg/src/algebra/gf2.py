"""Dense bit-packed matrices over F2"""

from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.utils.errors import InputError

WORD = 64

ArrayLike = Union[np.ndarray, Sequence[Sequence[int]]]


def _pack(bits: np.ndarray) -> np.ndarray:
    rows, cols = bits.shape
    words = max(1, (cols + WORD - 1) // WORD)
    padded = np.zeros((rows, words * WORD), dtype=np.uint8)
    padded[:, :cols] = bits
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").reshape(rows, words)


def _unpack(data: np.ndarray, cols: int) -> np.ndarray:
    if data.shape[0] == 0:
        return np.zeros((0, cols), dtype=np.uint8)
    raw = np.ascontiguousarray(data).view(np.uint8)
    return np.unpackbits(raw, axis=1, bitorder="little")[:, :cols]


class BitMatrix:
    """Immutable dense matrix over F2, rows packed into little-endian 64-bit words"""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: np.ndarray):
        if data.shape != (rows, max(1, (cols + WORD - 1) // WORD)):
            raise InputError(f"packed data of shape {data.shape} does not fit a {rows}x{cols} matrix")
        data = np.array(data, dtype=np.uint64, copy=True)
        tail = cols % WORD
        if tail and rows:
            data[:, -1] &= np.uint64((1 << tail) - 1)
        elif cols == 0 and rows:
            data[:, :] = 0
        data.flags.writeable = False
        self.rows = rows
        self.cols = cols
        self.data = data

    # Construction

    @classmethod
    def from_array(cls, array: ArrayLike) -> "BitMatrix":
        bits = np.asarray(array)
        if bits.ndim == 1:
            bits = bits.reshape(1, -1)
        if bits.ndim != 2:
            raise InputError(f"expected a 2-D array, got {bits.ndim}-D")
        bits = (bits.astype(np.int64) & 1).astype(np.uint8)
        return cls(bits.shape[0], bits.shape[1], _pack(bits))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls.from_array(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_array(np.eye(n, dtype=np.uint8))

    @classmethod
    def random(cls, rows: int, cols: int, rng: np.random.Generator) -> "BitMatrix":
        return cls.from_array(rng.integers(0, 2, size=(rows, cols), dtype=np.uint8))

    @classmethod
    def from_int_rows(cls, values: Iterable[int], cols: int) -> "BitMatrix":
        """Rows given as Python ints, bit j holding column j"""
        values = list(values)
        bits = np.zeros((len(values), cols), dtype=np.uint8)
        for i, v in enumerate(values):
            for j in range(cols):
                if (v >> j) & 1:
                    bits[i, j] = 1
        return cls.from_array(bits)

    # Views

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def to_array(self) -> np.ndarray:
        return _unpack(self.data, self.cols)

    def row(self, i: int) -> np.ndarray:
        return _unpack(self.data[i:i + 1], self.cols)[0]

    def int_rows(self) -> List[int]:
        return [int.from_bytes(self.data[i].tobytes(), "little") for i in range(self.rows)]

    def int_cols(self) -> List[int]:
        return self.T.int_rows()

    def row_weights(self) -> np.ndarray:
        return self.to_array().sum(axis=1)

    def is_zero(self) -> bool:
        return not bool(self.data.any())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols}, rank={self.rank()})"

    def __str__(self) -> str:
        return "\n".join("".join(str(b) for b in r) for r in self.to_array())

    # Algebra

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise InputError(f"cannot add {self.shape} and {other.shape}")
        return BitMatrix(self.rows, self.cols, self.data ^ other.data)

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return multiply(self, other)

    @property
    def T(self) -> "BitMatrix":
        return BitMatrix.from_array(self.to_array().T)

    def select_columns(self, columns: Sequence[int]) -> "BitMatrix":
        return BitMatrix.from_array(self.to_array()[:, list(columns)])

    def select_rows(self, rows: Sequence[int]) -> "BitMatrix":
        return BitMatrix(len(rows), self.cols, self.data[list(rows)])

    # Elimination

    def rref(self) -> Tuple["BitMatrix", List[int]]:
        """Reduced row-echelon form and pivot columns, pivoting on the first set bit"""
        data = np.array(self.data, copy=True)
        pivots: List[int] = []
        r = 0
        for col in range(self.cols):
            if r == self.rows:
                break
            word, bit = divmod(col, WORD)
            column = (data[:, word] >> np.uint64(bit)) & np.uint64(1)
            below = np.flatnonzero(column[r:])
            if below.size == 0:
                continue
            i = r + int(below[0])
            if i != r:
                data[[r, i]] = data[[i, r]]
                column[[r, i]] = column[[i, r]]
            hits = column.astype(bool)
            hits[r] = False
            data[hits] ^= data[r]
            pivots.append(col)
            r += 1
        return BitMatrix(self.rows, self.cols, data), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def row_basis(self) -> "BitMatrix":
        """Independent rows spanning the same space"""
        reduced, pivots = self.rref()
        return reduced.select_rows(range(len(pivots)))

    def inverse(self) -> "BitMatrix":
        if self.rows != self.cols:
            raise InputError(f"cannot invert a {self.rows}x{self.cols} matrix")
        n = self.rows
        reduced, pivots = hstack(self, BitMatrix.identity(n)).rref()
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise InputError("matrix is singular over F2")
        return BitMatrix.from_array(reduced.to_array()[:, n:])


def rank(m: BitMatrix) -> int:
    return m.rank()


def kernel_basis(m: BitMatrix) -> BitMatrix:
    """Rows form a basis of {v : m v = 0}"""
    reduced, pivots = m.rref()
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = np.zeros((len(free), m.cols), dtype=np.uint8)
    if free:
        basis[:, free] = np.eye(len(free), dtype=np.uint8)
        if pivots:
            r = reduced.to_array()
            basis[:, pivots] = r[:len(pivots)][:, free].T
    return BitMatrix.from_array(basis) if free else BitMatrix.zeros(0, m.cols)


def left_kernel_basis(m: BitMatrix) -> BitMatrix:
    """Rows form a basis of {u : u m = 0}"""
    return kernel_basis(m.T)


def cokernel_matrix(subspace_basis: BitMatrix) -> BitMatrix:
    """G whose right kernel is exactly the row span of subspace_basis"""
    return kernel_basis(subspace_basis)


def row_space_contains(space: BitMatrix, v: Union[np.ndarray, Sequence[int], BitMatrix]) -> bool:
    vec = v if isinstance(v, BitMatrix) else BitMatrix.from_array(np.asarray(v).reshape(1, -1))
    if vec.cols != space.cols:
        raise InputError(f"vector of length {vec.cols} against a space in F2^{space.cols}")
    return vstack(space, vec).rank() == space.rank()


def spans_contained(inner: BitMatrix, outer: BitMatrix) -> bool:
    """True iff every row of inner lies in rowspan(outer)"""
    if inner.cols != outer.cols:
        raise InputError(f"column mismatch {inner.cols} vs {outer.cols}")
    return vstack(outer, inner).rank() == outer.rank()


def same_row_space(a: BitMatrix, b: BitMatrix) -> bool:
    return spans_contained(a, b) and spans_contained(b, a)


def multiply(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.cols != b.rows:
        raise InputError(f"cannot multiply {a.shape} by {b.shape}")
    product = a.to_array().astype(np.int64) @ b.to_array().astype(np.int64)
    return BitMatrix.from_array(product & 1)


def transpose(m: BitMatrix) -> BitMatrix:
    return m.T


def hstack(*blocks: BitMatrix) -> BitMatrix:
    if len({b.rows for b in blocks}) > 1:
        raise InputError(f"hstack row mismatch: {[b.shape for b in blocks]}")
    return BitMatrix.from_array(np.hstack([b.to_array() for b in blocks]))


def vstack(*blocks: BitMatrix) -> BitMatrix:
    if len({b.cols for b in blocks}) > 1:
        raise InputError(f"vstack column mismatch: {[b.shape for b in blocks]}")
    return BitMatrix(sum(b.rows for b in blocks), blocks[0].cols, np.vstack([b.data for b in blocks]))


def block2x2(
    a: Optional[BitMatrix],
    b: Optional[BitMatrix],
    c: Optional[BitMatrix],
    d: Optional[BitMatrix],
) -> BitMatrix:
    """[[a, b], [c, d]] with None standing for a zero block of the implied shape"""
    top = next((x.rows for x in (a, b) if x is not None), None)
    bottom = next((x.rows for x in (c, d) if x is not None), None)
    left = next((x.cols for x in (a, c) if x is not None), None)
    right = next((x.cols for x in (b, d) if x is not None), None)
    if None in (top, bottom, left, right):
        raise InputError("block2x2 needs each block row and block column to carry a shape")
    grid = [[a, b], [c, d]]
    heights, widths = (top, bottom), (left, right)
    filled = []
    for i in range(2):
        row = []
        for j in range(2):
            block = grid[i][j]
            if block is None:
                block = BitMatrix.zeros(heights[i], widths[j])
            elif block.shape != (heights[i], widths[j]):
                raise InputError(f"block ({i},{j}) has shape {block.shape}, expected {(heights[i], widths[j])}")
            row.append(block)
        filled.append(hstack(*row))
    return vstack(*filled)
