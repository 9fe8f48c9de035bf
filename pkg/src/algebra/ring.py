"""The quotient ring F2[x]/(x^l + 1), matrices over it and their binary lift"""

import re
from enum import Enum
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from src.algebra.gf2 import BitMatrix
from src.utils.errors import InputError


class EntryClass(Enum):
    """Shape of a seed entry by number of monomials"""
    ZERO = "zero"
    MONOMIAL = "monomial"
    BINOMIAL = "binomial"
    OTHER = "other"


class RingElem:
    """Element of F2[x]/(x^l + 1); bit k of `bits` is the coefficient of x^k"""

    __slots__ = ("l", "bits")

    def __init__(self, l: int, bits: int = 0):
        if l < 1:
            raise InputError(f"lift size must be positive, got {l}")
        self.l = l
        self.bits = bits & ((1 << l) - 1)

    @classmethod
    def zero(cls, l: int) -> "RingElem":
        return cls(l, 0)

    @classmethod
    def one(cls, l: int) -> "RingElem":
        return cls(l, 1)

    @classmethod
    def monomial(cls, k: int, l: int) -> "RingElem":
        return cls(l, 1 << (k % l))

    @classmethod
    def from_exponents(cls, exponents: Iterable[int], l: int) -> "RingElem":
        bits = 0
        for k in exponents:
            bits ^= 1 << (k % l)
        return cls(l, bits)

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return tuple((self.bits >> k) & 1 for k in range(self.l))

    def exponents(self) -> List[int]:
        return [k for k in range(self.l) if (self.bits >> k) & 1]

    def weight(self) -> int:
        return bin(self.bits).count("1")

    def is_zero(self) -> bool:
        return self.bits == 0

    def _check(self, other: "RingElem"):
        if self.l != other.l:
            raise InputError(f"mixed lift sizes {self.l} and {other.l}")

    def shift(self, k: int) -> "RingElem":
        """Multiply by x^k"""
        k %= self.l
        mask = (1 << self.l) - 1
        return RingElem(self.l, ((self.bits << k) | (self.bits >> (self.l - k))) & mask)

    def __add__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        return RingElem(self.l, self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        acc = 0
        for k in self.exponents():
            acc ^= other.shift(k).bits
        return RingElem(self.l, acc)

    def involution(self) -> "RingElem":
        return RingElem.from_exponents(((self.l - k) % self.l for k in self.exponents()), self.l)

    def lift(self) -> np.ndarray:
        """l x l circulant; row i is the coefficient vector of x^i times this element"""
        block = np.zeros((self.l, self.l), dtype=np.uint8)
        eye = np.eye(self.l, dtype=np.uint8)
        for k in self.exponents():
            block ^= np.roll(eye, k, axis=1)
        return block

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.l == other.l and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.l, self.bits))

    def __str__(self) -> str:
        if self.bits == 0:
            return "0"
        terms = []
        for k in self.exponents():
            terms.append("1" if k == 0 else "x" if k == 1 else f"x^{k}")
        return "+".join(terms)

    def __repr__(self) -> str:
        return f"RingElem({self}, l={self.l})"


_TERM = re.compile(r"\s*(?:(0|1)|x(?:\^(\d+))?)\s*")


def parse_poly(text: str, l: int) -> RingElem:
    """
    Parse `term ("+" term)*` with term one of 0, 1, x, x^k

    Args:
        text: Polynomial text such as "x^13+x^16"
        l: Lift size; exponents are reduced modulo l

    Returns:
        The XOR of the listed monomials
    """
    pos = 0
    bits = 0
    while True:
        match = _TERM.match(text, pos)
        if match is None or match.end() == pos:
            raise InputError(f"polynomial syntax error at position {pos} in {text!r}")
        constant, power = match.group(1), match.group(2)
        if constant == "1":
            bits ^= 1
        elif constant is None:
            exponent = int(power) if power is not None else 1
            bits ^= 1 << (exponent % l)
        pos = match.end()
        if pos == len(text):
            return RingElem(l, bits)
        if text[pos] != "+":
            raise InputError(f"polynomial syntax error at position {pos} in {text!r}: expected '+'")
        pos += 1


def chi(l: int) -> RingElem:
    """The all-ones element 1 + x + ... + x^(l-1)"""
    return RingElem(l, (1 << l) - 1)


def involution(e: RingElem) -> RingElem:
    return e.involution()


def classify_entry(e: RingElem) -> EntryClass:
    w = e.weight()
    if w == 0:
        return EntryClass.ZERO
    if w == 1:
        return EntryClass.MONOMIAL
    if w == 2:
        return EntryClass.BINOMIAL
    return EntryClass.OTHER


class RingMatrix:
    """Matrix over F2[x]/(x^l + 1), stored as a row-major grid of RingElem"""

    __slots__ = ("l", "rows", "cols", "entries")

    def __init__(self, l: int, entries: Sequence[Sequence[RingElem]], cols: int = None):
        grid = tuple(tuple(row) for row in entries)
        width = len(grid[0]) if grid else (cols or 0)
        for row in grid:
            if len(row) != width:
                raise InputError("ragged ring matrix")
            for e in row:
                if e.l != l:
                    raise InputError(f"entry with lift size {e.l} in a matrix over l={l}")
        self.l = l
        self.rows = len(grid)
        self.cols = width
        self.entries = grid

    # Construction

    @classmethod
    def from_strings(cls, grid: Sequence[Sequence[str]], l: int) -> "RingMatrix":
        return cls(l, [[parse_poly(str(s), l) for s in row] for row in grid])

    @classmethod
    def from_bits(cls, array, l: int) -> "RingMatrix":
        """0/1 array to a matrix with entries 0 or 1"""
        arr = np.asarray(array, dtype=np.int64)
        return cls(l, [[RingElem(l, int(v) & 1) for v in row] for row in arr], cols=arr.shape[1])

    @classmethod
    def zeros(cls, rows: int, cols: int, l: int) -> "RingMatrix":
        return cls(l, [[RingElem.zero(l)] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int, l: int) -> "RingMatrix":
        return cls(l, [[RingElem(l, int(i == j)) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def diagonal(cls, e: RingElem, n: int) -> "RingMatrix":
        return cls(e.l, [[e if i == j else RingElem.zero(e.l) for j in range(n)] for i in range(n)], cols=n)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: Tuple[int, int]) -> RingElem:
        i, j = index
        return self.entries[i][j]

    # Algebra

    def _check(self, other: "RingMatrix"):
        if self.l != other.l:
            raise InputError(f"mixed lift sizes {self.l} and {other.l}")

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise InputError(f"cannot add {self.shape} and {other.shape}")
        return RingMatrix(
            self.l,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
            cols=self.cols,
        )

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise InputError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = RingElem.zero(self.l)
                for t in range(self.cols):
                    acc = acc + self.entries[i][t] * other.entries[t][j]
                row.append(acc)
            out.append(row)
        return RingMatrix(self.l, out, cols=other.cols)

    def scale(self, e: RingElem) -> "RingMatrix":
        return RingMatrix(self.l, [[e * a for a in row] for row in self.entries], cols=self.cols)

    def conj_transpose(self) -> "RingMatrix":
        return RingMatrix(
            self.l,
            [[self.entries[i][j].involution() for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def is_zero_one(self) -> bool:
        return all(e.bits in (0, 1) for row in self.entries for e in row)

    def binary_lift(self) -> BitMatrix:
        l = self.l
        out = np.zeros((self.rows * l, self.cols * l), dtype=np.uint8)
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if e.bits:
                    out[i * l:(i + 1) * l, j * l:(j + 1) * l] = e.lift()
        return BitMatrix.from_array(out)

    def to_bits(self) -> np.ndarray:
        """0/1 entries as an integer array"""
        if not self.is_zero_one():
            raise InputError("matrix has entries other than 0 and 1")
        return np.array([[e.bits for e in row] for row in self.entries], dtype=np.uint8).reshape(self.rows, self.cols)

    def to_strings(self) -> List[List[str]]:
        return [[str(e) for e in row] for row in self.entries]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.l == other.l and self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.l, self.shape, self.entries))

    def __repr__(self) -> str:
        return f"RingMatrix(l={self.l}, {self.to_strings()})"


def conj_transpose(m: RingMatrix) -> RingMatrix:
    return m.conj_transpose()


def binary_lift(m: RingMatrix) -> BitMatrix:
    return m.binary_lift()


def kron(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    """Kronecker product; row (i_a, i_b) sits at index i_a * rows(b) + i_b"""
    if a.l != b.l:
        raise InputError(f"mixed lift sizes {a.l} and {b.l}")
    out = []
    for ia in range(a.rows):
        for ib in range(b.rows):
            out.append([a.entries[ia][ja] * b.entries[ib][jb] for ja in range(a.cols) for jb in range(b.cols)])
    return RingMatrix(a.l, out, cols=a.cols * b.cols)


def hstack(*blocks: RingMatrix) -> RingMatrix:
    if len({b.rows for b in blocks}) > 1 or len({b.l for b in blocks}) > 1:
        raise InputError("hstack needs equal row counts and lift sizes")
    rows = [sum((list(b.entries[i]) for b in blocks), []) for i in range(blocks[0].rows)]
    return RingMatrix(blocks[0].l, rows, cols=sum(b.cols for b in blocks))


def vstack(*blocks: RingMatrix) -> RingMatrix:
    if len({b.cols for b in blocks}) > 1 or len({b.l for b in blocks}) > 1:
        raise InputError("vstack needs equal column counts and lift sizes")
    return RingMatrix(blocks[0].l, [row for b in blocks for row in b.entries], cols=blocks[0].cols)
