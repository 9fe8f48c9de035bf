"""Phase-free Clifford algebra: gates as symplectic matrices over F2"""

import re
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np

from src.algebra.gf2 import BitMatrix
from src.utils.errors import InputError, VerificationError
from src.utils.logger import app_logger


class GateKind(Enum):
    """Named Clifford gates; SSDG(i, j) is S on i followed by S-dagger on j"""
    CNOT = "CNOT"
    S = "S"
    SDG = "SDG"
    H = "H"
    HALL = "HALL"
    SWAP = "SWAP"
    CZ = "CZ"
    SSDG = "SSDG"
    X = "X"
    Y = "Y"
    Z = "Z"


ARITY = {
    GateKind.CNOT: 2,
    GateKind.S: 1,
    GateKind.SDG: 1,
    GateKind.H: 1,
    GateKind.HALL: 0,
    GateKind.SWAP: 2,
    GateKind.CZ: 2,
    GateKind.SSDG: 2,
    GateKind.X: 1,
    GateKind.Y: 1,
    GateKind.Z: 1,
}


@dataclass(frozen=True)
class Gate:
    """A gate on 0-based qubit indices"""

    kind: GateKind
    qubits: Tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.qubits) != ARITY[self.kind]:
            raise InputError(f"{self.kind.value} takes {ARITY[self.kind]} qubit(s), got {len(self.qubits)}")
        if len(set(self.qubits)) != len(self.qubits):
            raise InputError(f"{self.kind.value} needs distinct qubits, got {self.qubits}")

    def __str__(self) -> str:
        if not self.qubits:
            return self.kind.value
        return f"{self.kind.value}({','.join(str(q + 1) for q in self.qubits)})"


Word = List[Gate]

_GATE_TEXT = re.compile(r"^\s*([A-Za-z]+)\s*(?:\(\s*([\d\s,]*)\))?\s*$")


def parse_gate(text: str) -> Gate:
    """Parse "CNOT(1,2)", "SDG(3)" or "HALL"; qubit numbers in text are 1-based"""
    match = _GATE_TEXT.match(text)
    if match is None:
        raise InputError(f"cannot parse gate {text!r}")
    name = match.group(1).upper()
    try:
        kind = GateKind(name)
    except ValueError:
        raise InputError(f"unknown gate {name!r}") from None
    args = match.group(2)
    qubits = tuple(int(a) - 1 for a in args.split(",") if a.strip()) if args else ()
    if any(q < 0 for q in qubits):
        raise InputError(f"qubit numbers start at 1 in {text!r}")
    return Gate(kind, qubits)


def parse_word(text: str) -> Word:
    """Semicolon- or whitespace-separated gates in time order"""
    parts = [p for p in re.split(r"[;\s]+(?![^(]*\))", text.strip()) if p]
    return [parse_gate(p) for p in parts]


def gate(kind: GateKind, *qubits: int) -> Gate:
    return Gate(kind, tuple(qubits))


def omega(m: int) -> np.ndarray:
    zero, eye = np.zeros((m, m), dtype=np.uint8), np.eye(m, dtype=np.uint8)
    return np.block([[zero, eye], [eye, zero]])


class SymplecticOp:
    """
    Action of a Clifford on Pauli vectors (x|z)

    Column j < m is the image of X_j and column m + j the image of Z_j.
    Composition `a @ b` applies b first.
    """

    __slots__ = ("m", "mat")

    def __init__(self, m: int, mat: BitMatrix):
        if mat.shape != (2 * m, 2 * m):
            raise InputError(f"symplectic matrix on {m} qubits must be {2 * m}x{2 * m}, got {mat.shape}")
        self.m = m
        self.mat = mat

    @classmethod
    def identity(cls, m: int) -> "SymplecticOp":
        return cls(m, BitMatrix.identity(2 * m))

    @classmethod
    def from_array(cls, array) -> "SymplecticOp":
        arr = np.asarray(array, dtype=np.uint8)
        return cls(arr.shape[0] // 2, BitMatrix.from_array(arr))

    def to_array(self) -> np.ndarray:
        return self.mat.to_array()

    def __matmul__(self, other: "SymplecticOp") -> "SymplecticOp":
        if self.m != other.m:
            raise InputError(f"cannot compose operators on {self.m} and {other.m} qubits")
        return SymplecticOp(self.m, self.mat @ other.mat)

    def inverse(self) -> "SymplecticOp":
        om = omega(self.m).astype(np.int64)
        return SymplecticOp(self.m, BitMatrix.from_array((om @ self.to_array().T.astype(np.int64) @ om) & 1))

    def is_symplectic(self) -> bool:
        a = self.to_array().astype(np.int64)
        return bool(np.array_equal((a.T @ omega(self.m) @ a) & 1, omega(self.m)))

    def apply(self, x, z) -> Tuple[np.ndarray, np.ndarray]:
        v = np.concatenate([np.asarray(x), np.asarray(z)]).astype(np.int64)
        out = (self.to_array().astype(np.int64) @ v) & 1
        return out[: self.m].astype(np.uint8), out[self.m:].astype(np.uint8)

    def is_identity(self) -> bool:
        return self.mat == BitMatrix.identity(2 * self.m)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymplecticOp):
            return NotImplemented
        return self.m == other.m and self.mat == other.mat

    def __hash__(self) -> int:
        return hash((self.m, self.mat))

    def __repr__(self) -> str:
        return f"SymplecticOp(m={self.m})"


def lambda_of(c) -> SymplecticOp:
    """Lambda(C) = [[I, 0], [C, I]] for symmetric C"""
    c = np.asarray(c.to_array() if isinstance(c, BitMatrix) else c, dtype=np.uint8) & 1
    if not np.array_equal(c, c.T):
        raise InputError("Lambda(C) needs a symmetric C")
    m = c.shape[0]
    eye, zero = np.eye(m, dtype=np.uint8), np.zeros((m, m), dtype=np.uint8)
    return SymplecticOp(m, BitMatrix.from_array(np.block([[eye, zero], [c, eye]])))


def l_of(a) -> SymplecticOp:
    """L(A) = [[A, 0], [0, A^-T]] for invertible A"""
    a = a if isinstance(a, BitMatrix) else BitMatrix.from_array(a)
    inv_t = a.inverse().T.to_array()
    m = a.rows
    zero = np.zeros((m, m), dtype=np.uint8)
    return SymplecticOp(m, BitMatrix.from_array(np.block([[a.to_array(), zero], [zero, inv_t]])))


def conjugated_lambda(a, c) -> SymplecticOp:
    """L(A) Lambda(C) L(A)^-1, checked against Lambda(A^-T C A^-1)"""
    a = a if isinstance(a, BitMatrix) else BitMatrix.from_array(a)
    c = c if isinstance(c, BitMatrix) else BitMatrix.from_array(c)
    la = l_of(a)
    result = la @ lambda_of(c) @ la.inverse()
    a_inv = a.inverse()
    expected = lambda_of((a_inv.T @ c @ a_inv).to_array())
    if result != expected:
        raise VerificationError("L(A) Lambda(C) L(A)^-1 = Lambda(A^-T C A^-1)")
    return result


def _unit(m: int, i: int, j: int) -> np.ndarray:
    e = np.zeros((m, m), dtype=np.uint8)
    e[i, j] = 1
    return e


def gate_matrix(g: Gate, m: int) -> SymplecticOp:
    """pi(g) on m qubits; Pauli gates act trivially"""
    if any(q >= m for q in g.qubits):
        raise InputError(f"{g} acts outside {m} qubits")
    eye = np.eye(m, dtype=np.uint8)
    kind, q = g.kind, g.qubits
    if kind is GateKind.CNOT:
        return l_of(eye ^ _unit(m, q[1], q[0]))
    if kind in (GateKind.S, GateKind.SDG):
        return lambda_of(_unit(m, q[0], q[0]))
    if kind is GateKind.CZ:
        return lambda_of(_unit(m, q[0], q[1]) ^ _unit(m, q[1], q[0]))
    if kind is GateKind.SSDG:
        return lambda_of(_unit(m, q[0], q[0]) ^ _unit(m, q[1], q[1]))
    if kind is GateKind.SWAP:
        perm = eye.copy()
        perm[[q[0], q[1]]] = perm[[q[1], q[0]]]
        return l_of(perm)
    if kind is GateKind.HALL:
        return SymplecticOp(m, BitMatrix.from_array(omega(m)))
    if kind is GateKind.H:
        mat = np.eye(2 * m, dtype=np.uint8)
        i = q[0]
        mat[[i, m + i]] = mat[[m + i, i]]
        return SymplecticOp(m, BitMatrix.from_array(mat))
    return SymplecticOp.identity(m)


def word_to_symplectic(word: Sequence[Gate], m: int) -> SymplecticOp:
    """Time-ordered circuit to pi(U) = pi(g_last) ... pi(g_first)"""
    total = SymplecticOp.identity(m)
    for g in word:
        total = gate_matrix(g, m) @ total
    return total


def invert_word(word: Sequence[Gate]) -> Word:
    inverse = {GateKind.S: GateKind.SDG, GateKind.SDG: GateKind.S}
    out = []
    for g in reversed(word):
        if g.kind is GateKind.SSDG:
            out.append(Gate(GateKind.SSDG, (g.qubits[1], g.qubits[0])))
        else:
            out.append(Gate(inverse.get(g.kind, g.kind), g.qubits))
    return out


# CNOT words U_1, U_2, U_3 on qubits 1..3, time order
U_WORDS = (
    [gate(GateKind.CNOT, 0, 2), gate(GateKind.CNOT, 2, 0), gate(GateKind.CNOT, 0, 2)],
    [gate(GateKind.CNOT, 1, 2), gate(GateKind.CNOT, 2, 1), gate(GateKind.CNOT, 1, 0), gate(GateKind.CNOT, 0, 2)],
    [gate(GateKind.CNOT, 0, 1), gate(GateKind.CNOT, 1, 0), gate(GateKind.CNOT, 2, 0), gate(GateKind.CNOT, 0, 1)],
)

U_MATRICES = (
    ((0, 0, 1), (0, 1, 0), (1, 0, 0)),
    ((1, 0, 1), (0, 0, 1), (1, 1, 0)),
    ((0, 1, 1), (1, 0, 1), (0, 0, 1)),
)


def swap_word(i: int, j: int) -> Word:
    return [gate(GateKind.CNOT, i, j), gate(GateKind.CNOT, j, i), gate(GateKind.CNOT, i, j)]


def synthesize_S1(m: int) -> Word:
    """
    S on qubit 1 from CNOTs and S_1 S_2^dagger

    Conjugating S_1 S_2^dagger by the CNOT words U_k gives Lambda(C_k) with
    C_1 + C_2 + C_3 = E_11.

    Args:
        m: Qubit count, at least 3

    Returns:
        Time-ordered word over CNOT and SSDG(1,2) with pi(word) = Lambda(E_11)
    """
    if m < 3:
        raise InputError(f"S_1 synthesis needs m >= 3, got {m}")
    c0 = np.zeros((m, m), dtype=np.uint8)
    c0[0, 0] = c0[1, 1] = 1
    total_c = np.zeros((m, m), dtype=np.uint8)
    word: Word = []
    for u_word, printed in zip(U_WORDS, U_MATRICES):
        a = np.eye(m, dtype=np.uint8)
        a[:3, :3] = printed
        if word_to_symplectic(u_word, m) != l_of(a):
            raise VerificationError("pi(U_k) = L(A_k)", f"word {[str(g) for g in u_word]}")
        conj = conjugated_lambda(a, c0)
        total_c ^= conj.to_array()[m:, :m]
        word = invert_word(u_word) + [gate(GateKind.SSDG, 0, 1)] + u_word + word
    e11 = _unit(m, 0, 0)
    if not np.array_equal(total_c, e11):
        raise VerificationError("C_1 + C_2 + C_3 = E_11", f"sum is {total_c.tolist()}")
    if word_to_symplectic(word, m) != lambda_of(e11):
        raise VerificationError("pi(S_1 word) = Lambda(E_11)")
    app_logger.debug(f"Synthesized S_1 on {m} qubits with {len(word)} gates")
    return word


def synthesize_Si(i: int, m: int) -> Word:
    """S on qubit i (0-based) by conjugating the S_1 word with SWAP(1, i)"""
    if not 0 <= i < m:
        raise InputError(f"qubit {i + 1} outside 1..{m}")
    core = synthesize_S1(m)
    if i == 0:
        return core
    return swap_word(0, i) + core + swap_word(0, i)


def synthesize_Hi(i: int, m: int) -> Word:
    """H_i = S_i (H^m S_i H^m) S_i up to global phase"""
    s_i = synthesize_Si(i, m)
    hall = [gate(GateKind.HALL)]
    word = s_i + hall + s_i + hall + s_i
    if word_to_symplectic(word, m) != gate_matrix(gate(GateKind.H, i), m):
        raise VerificationError("S_i H^m S_i H^m S_i = H_i", f"qubit {i + 1}")
    return word


def sp_order(m: int) -> int:
    """|Sp(2m, 2)| = 2^(m^2) prod_i (4^i - 1)"""
    order = 2 ** (m * m)
    for i in range(1, m + 1):
        order *= 4 ** i - 1
    return order
