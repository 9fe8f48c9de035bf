"""Sign-tracked stabilizer tableau, exact-phase Paulis and the measurement-based CNOT"""

from dataclasses import dataclass, field
from itertools import product
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from src.algebra.gf2 import BitMatrix
from src.clifford.symplectic import Gate, GateKind, SymplecticOp, gate
from src.utils.config import settings
from src.utils.errors import InputError
from src.utils.logger import app_logger


@dataclass(frozen=True)
class PauliVec:
    """Hermitian Pauli sign * prod P_j; x_j = z_j = 1 stands for Y_j"""

    x: Tuple[int, ...]
    z: Tuple[int, ...]
    sign: int = 1

    def __post_init__(self):
        if len(self.x) != len(self.z):
            raise InputError("x and z parts differ in length")
        if self.sign not in (1, -1):
            raise InputError(f"sign must be +1 or -1, got {self.sign}")

    @property
    def m(self) -> int:
        return len(self.x)

    @classmethod
    def from_text(cls, text: str) -> "PauliVec":
        """"+XZI", "-YY" or "ZIZ"; one letter per qubit"""
        sign = -1 if text.startswith("-") else 1
        body = text.lstrip("+-").upper()
        if any(c not in "IXYZ" for c in body):
            raise InputError(f"bad Pauli string {text!r}")
        return cls(tuple(int(c in "XY") for c in body), tuple(int(c in "ZY") for c in body), sign)

    @classmethod
    def on(cls, m: int, letters: dict, sign: int = 1) -> "PauliVec":
        """Pauli given as {qubit: letter} on m qubits"""
        chars = ["I"] * m
        for q, letter in letters.items():
            chars[q] = letter
        return cls.from_text(("-" if sign < 0 else "") + "".join(chars))

    def commutes_with(self, other: "PauliVec") -> bool:
        form = sum(a * d + b * c for a, b, c, d in zip(self.x, self.z, other.x, other.z))
        return form % 2 == 0

    def __str__(self) -> str:
        letters = "".join("IXZY"[a + 2 * b] for a, b in zip(self.x, self.z))
        return ("+" if self.sign > 0 else "-") + letters


@dataclass(frozen=True)
class SignedPauli:
    """i^k X(x) Z(z) with exact phase"""

    k: int
    x: Tuple[int, ...]
    z: Tuple[int, ...]

    @classmethod
    def from_bits(cls, x, z, k: int = 0) -> "SignedPauli":
        return cls(k % 4, tuple(int(v) & 1 for v in x), tuple(int(v) & 1 for v in z))

    @property
    def m(self) -> int:
        return len(self.x)

    def __mul__(self, other: "SignedPauli") -> "SignedPauli":
        cross = sum(a * b for a, b in zip(self.z, other.x))
        x = tuple(a ^ b for a, b in zip(self.x, other.x))
        z = tuple(a ^ b for a, b in zip(self.z, other.z))
        return SignedPauli((self.k + other.k + 2 * cross) % 4, x, z)

    def conjugate(self, g: Gate) -> "SignedPauli":
        """g P g^dagger"""
        k, x, z = self.k, list(self.x), list(self.z)
        kind, q = g.kind, g.qubits
        if kind is GateKind.HALL:
            out = self
            for i in range(self.m):
                out = out.conjugate(gate(GateKind.H, i))
            return out
        if kind is GateKind.SSDG:
            return self.conjugate(gate(GateKind.S, q[0])).conjugate(gate(GateKind.SDG, q[1]))
        if kind is GateKind.S:
            a = q[0]
            k += x[a]
            z[a] ^= x[a]
        elif kind is GateKind.SDG:
            a = q[0]
            k += 3 * x[a]
            z[a] ^= x[a]
        elif kind is GateKind.H:
            a = q[0]
            k += 2 * x[a] * z[a]
            x[a], z[a] = z[a], x[a]
        elif kind is GateKind.CZ:
            a, b = q
            k += 2 * x[a] * x[b]
            z[b] ^= x[a]
            z[a] ^= x[b]
        elif kind is GateKind.CNOT:
            c, t = q
            x[t] ^= x[c]
            z[c] ^= z[t]
        elif kind is GateKind.SWAP:
            a, b = q
            x[a], x[b] = x[b], x[a]
            z[a], z[b] = z[b], z[a]
        elif kind is GateKind.X:
            k += 2 * z[q[0]]
        elif kind is GateKind.Z:
            k += 2 * x[q[0]]
        elif kind is GateKind.Y:
            k += 2 * (x[q[0]] + z[q[0]])
        return SignedPauli(k % 4, tuple(x), tuple(z))

    def conjugate_word(self, word: Sequence[Gate]) -> "SignedPauli":
        out = self
        for g in word:
            out = out.conjugate(g)
        return out

    def hermitian_sign(self) -> int:
        """Sign of the operator written with Y letters; 0 when the phase is imaginary"""
        ys = sum(a & b for a, b in zip(self.x, self.z))
        diff = (self.k - ys) % 4
        if diff % 2:
            return 0
        return 1 if diff == 0 else -1

    def to_pauli(self) -> PauliVec:
        sign = self.hermitian_sign()
        if sign == 0:
            raise InputError("operator is anti-Hermitian")
        return PauliVec(self.x, self.z, sign)


def _g(x1, z1, x2, z2) -> np.ndarray:
    """Exponent of i picked up when multiplying single-qubit Paulis, vectorized"""
    x1, z1, x2, z2 = (np.asarray(v, dtype=np.int64) for v in (x1, z1, x2, z2))
    out = np.zeros_like(x1)
    y = (x1 == 1) & (z1 == 1)
    xo = (x1 == 1) & (z1 == 0)
    zo = (x1 == 0) & (z1 == 1)
    out[y] = (z2 - x2)[y]
    out[xo] = (z2 * (2 * x2 - 1))[xo]
    out[zo] = (x2 * (1 - 2 * z2))[zo]
    return out


@dataclass
class StabTableau:
    """
    Stabilizer state on m qubits

    Rows 0..m-1 are destabilizers, rows m..2m-1 stabilizers. Pauli-frame
    corrections are recorded in `frame` and applied by `apply_frame`.
    """

    m: int
    x: np.ndarray = field(init=False)
    z: np.ndarray = field(init=False)
    r: np.ndarray = field(init=False)
    frame: List[Gate] = field(default_factory=list)

    def __post_init__(self):
        eye = np.eye(self.m, dtype=np.uint8)
        zero = np.zeros((self.m, self.m), dtype=np.uint8)
        self.x = np.vstack([eye, zero])
        self.z = np.vstack([zero, eye])
        self.r = np.zeros(2 * self.m, dtype=np.uint8)

    def copy(self) -> "StabTableau":
        out = StabTableau(self.m, frame=list(self.frame))
        out.x, out.z, out.r = self.x.copy(), self.z.copy(), self.r.copy()
        return out

    # Gates

    def apply(self, g: Gate):
        kind, q = g.kind, g.qubits
        if any(i >= self.m for i in q):
            raise InputError(f"{g} acts outside {self.m} qubits")
        x, z, r = self.x, self.z, self.r
        if kind is GateKind.H:
            a = q[0]
            r ^= x[:, a] & z[:, a]
            x[:, a], z[:, a] = z[:, a].copy(), x[:, a].copy()
        elif kind is GateKind.S:
            a = q[0]
            r ^= x[:, a] & z[:, a]
            z[:, a] ^= x[:, a]
        elif kind is GateKind.SDG:
            a = q[0]
            r ^= x[:, a] & (1 - z[:, a])
            z[:, a] ^= x[:, a]
        elif kind is GateKind.CNOT:
            c, t = q
            r ^= x[:, c] & z[:, t] & (x[:, t] ^ z[:, c] ^ 1)
            x[:, t] ^= x[:, c]
            z[:, c] ^= z[:, t]
        elif kind is GateKind.CZ:
            a, b = q
            for h in (gate(GateKind.H, b), gate(GateKind.CNOT, a, b), gate(GateKind.H, b)):
                self.apply(h)
        elif kind is GateKind.SSDG:
            self.apply(gate(GateKind.S, q[0]))
            self.apply(gate(GateKind.SDG, q[1]))
        elif kind is GateKind.HALL:
            for i in range(self.m):
                self.apply(gate(GateKind.H, i))
        elif kind is GateKind.SWAP:
            a, b = q
            x[:, [a, b]] = x[:, [b, a]]
            z[:, [a, b]] = z[:, [b, a]]
        elif kind is GateKind.X:
            r ^= z[:, q[0]]
        elif kind is GateKind.Z:
            r ^= x[:, q[0]]
        elif kind is GateKind.Y:
            r ^= x[:, q[0]] ^ z[:, q[0]]

    def apply_word(self, word: Sequence[Gate]):
        for g in word:
            self.apply(g)

    def record(self, g: Gate):
        self.frame.append(g)

    def apply_frame(self):
        for g in self.frame:
            self.apply(g)
        self.frame = []

    # Rows

    def _rowsum(self, h: int, i: int):
        """Row h <- row i * row h"""
        total = 2 * int(self.r[h]) + 2 * int(self.r[i])
        total += int(_g(self.x[i], self.z[i], self.x[h], self.z[h]).sum())
        self.r[h] = (total % 4) // 2
        self.x[h] ^= self.x[i]
        self.z[h] ^= self.z[i]

    def _anticommuting(self, p: PauliVec) -> np.ndarray:
        px = np.asarray(p.x, dtype=np.uint8)
        pz = np.asarray(p.z, dtype=np.uint8)
        return ((self.x.astype(np.int64) @ pz + self.z.astype(np.int64) @ px) & 1).astype(bool)

    def _check(self, p: PauliVec):
        if p.m != self.m:
            raise InputError(f"Pauli on {p.m} qubits measured on a {self.m}-qubit tableau")

    def _deterministic_bit(self, p: PauliVec, anti: np.ndarray) -> int:
        scratch_x = np.zeros(self.m, dtype=np.uint8)
        scratch_z = np.zeros(self.m, dtype=np.uint8)
        scratch_r = 0
        for i in np.flatnonzero(anti[: self.m]):
            s = self.m + i
            total = 2 * scratch_r + 2 * int(self.r[s]) + int(_g(self.x[s], self.z[s], scratch_x, scratch_z).sum())
            scratch_r = (total % 4) // 2
            scratch_x ^= self.x[s]
            scratch_z ^= self.z[s]
        return scratch_r ^ int(p.sign < 0)

    def peek(self, p: PauliVec) -> int:
        """+1 or -1 when the outcome of measuring p is determined, 0 when random"""
        self._check(p)
        anti = self._anticommuting(p)
        if anti[self.m:].any():
            return 0
        return -1 if self._deterministic_bit(p, anti) else 1

    def measure(
        self,
        p: PauliVec,
        forced: Optional[int] = None,
        rng: Optional[np.random.Generator] = None,
    ) -> Tuple[int, bool]:
        """
        Measure a Pauli observable

        Args:
            p: Observable
            forced: Outcome bit (0 for +1) used when the result is random
            rng: Generator used when the result is random and not forced

        Returns:
            (outcome bit, whether the outcome was random)
        """
        self._check(p)
        anti = self._anticommuting(p)
        stab_anti = np.flatnonzero(anti[self.m:])
        if stab_anti.size == 0:
            return self._deterministic_bit(p, anti), False

        pivot = self.m + int(stab_anti[0])
        for i in np.flatnonzero(anti):
            if i != pivot:
                self._rowsum(int(i), pivot)
        d = pivot - self.m
        self.x[d], self.z[d], self.r[d] = self.x[pivot].copy(), self.z[pivot].copy(), self.r[pivot]
        if forced is None:
            rng = rng or np.random.default_rng(settings.default_seed)
            forced = int(rng.integers(0, 2))
        self.x[pivot] = np.asarray(p.x, dtype=np.uint8)
        self.z[pivot] = np.asarray(p.z, dtype=np.uint8)
        self.r[pivot] = (forced & 1) ^ int(p.sign < 0)
        return forced & 1, True

    def stabilizers(self) -> List[PauliVec]:
        return [
            PauliVec(tuple(int(v) for v in self.x[i]), tuple(int(v) for v in self.z[i]), -1 if self.r[i] else 1)
            for i in range(self.m, 2 * self.m)
        ]

    def symplectic_action(self) -> SymplecticOp:
        """Images of X_j (destabilizers) and Z_j (stabilizers) of a tableau started at |0...0>"""
        return SymplecticOp(self.m, BitMatrix.from_array(np.hstack([self.x, self.z]).T))


def tableau_apply(t: StabTableau, op) -> StabTableau:
    """Apply a gate or a time-ordered word"""
    if isinstance(op, Gate):
        t.apply(op)
    else:
        t.apply_word(op)
    return t


def tableau_measure(t: StabTableau, pauli: PauliVec, forced_outcome: Optional[int] = None) -> int:
    """Measurement outcome as +1 / -1"""
    bit, _ = t.measure(pauli, forced_outcome)
    return -1 if bit else 1


def peek(t: StabTableau, pauli: PauliVec) -> int:
    return t.peek(pauli)


# Single-qubit stabilizer states from |0>, time order
STATE_PREPS = {
    "0": [],
    "1": [GateKind.X],
    "+": [GateKind.H],
    "-": [GateKind.X, GateKind.H],
    "+i": [GateKind.H, GateKind.S],
    "-i": [GateKind.X, GateKind.H, GateKind.S],
}


class PpmCnotReport(BaseModel):
    branches: int
    product_inputs: int
    choi_passed: bool
    product_passed: bool

    @property
    def passed(self) -> bool:
        return self.choi_passed and self.product_passed


CONTROL, AUX, TARGET = 0, 1, 2


def ppm_cnot(t: StabTableau, control: int, aux: int, target: int, outcomes: Sequence[int]) -> List[int]:
    """
    CNOT(control -> target) from joint measurements with aux prepared in |+>

    Measures Z_c Z_a, then X_a X_t, then Z_a, and applies Z_c^b X_t^(a xor s).
    Returns the three outcome bits.
    """
    m = t.m
    t.apply(gate(GateKind.H, aux))
    a, _ = t.measure(PauliVec.on(m, {control: "Z", aux: "Z"}), outcomes[0])
    b, _ = t.measure(PauliVec.on(m, {aux: "X", target: "X"}), outcomes[1])
    s, _ = t.measure(PauliVec.on(m, {aux: "Z"}), outcomes[2])
    if b:
        t.record(gate(GateKind.Z, control))
    if a ^ s:
        t.record(gate(GateKind.X, target))
    if s:
        t.record(gate(GateKind.X, aux))
    t.apply_frame()
    return [a, b, s]


def ppm_cnot_check() -> PpmCnotReport:
    """Compare the measurement-based CNOT with the ideal gate on every branch"""
    branches = list(product((0, 1), repeat=3))
    # control and target Bell-paired with references 3 and 4
    choi_ok = True
    for outcomes in branches:
        t = StabTableau(5)
        t.apply_word([gate(GateKind.H, CONTROL), gate(GateKind.CNOT, CONTROL, 3)])
        t.apply_word([gate(GateKind.H, TARGET), gate(GateKind.CNOT, TARGET, 4)])
        ppm_cnot(t, CONTROL, AUX, TARGET, outcomes)
        expected = [
            PauliVec.on(5, {CONTROL: "X", TARGET: "X", 3: "X"}),
            PauliVec.on(5, {CONTROL: "Z", 3: "Z"}),
            PauliVec.on(5, {TARGET: "X", 4: "X"}),
            PauliVec.on(5, {CONTROL: "Z", TARGET: "Z", 4: "Z"}),
        ]
        choi_ok &= all(t.peek(p) == 1 for p in expected)

    product_ok = True
    inputs = list(product(STATE_PREPS, repeat=2))
    for (c_state, t_state), outcomes in product(inputs, branches):
        prep = [gate(k, CONTROL) for k in STATE_PREPS[c_state]] + [gate(k, TARGET) for k in STATE_PREPS[t_state]]
        ideal = StabTableau(3)
        ideal.apply_word(prep + [gate(GateKind.CNOT, CONTROL, TARGET)])
        actual = StabTableau(3)
        actual.apply_word(prep)
        ppm_cnot(actual, CONTROL, AUX, TARGET, outcomes)
        wanted = [p for p in ideal.stabilizers() if not p.x[AUX] and not p.z[AUX]]
        product_ok &= all(actual.peek(p) == 1 for p in wanted)

    if not (choi_ok and product_ok):
        app_logger.error("Measurement-based CNOT differs from CNOT on some branch")
    return PpmCnotReport(
        branches=len(branches),
        product_inputs=len(inputs),
        choi_passed=choi_ok,
        product_passed=product_ok,
    )
