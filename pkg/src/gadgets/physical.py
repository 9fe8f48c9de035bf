"""Physical operations on the [[24,8,3]] code and the logical actions they induce"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from src.algebra import gf2
from src.algebra.ring import RingMatrix
from src.clifford.symplectic import Gate, GateKind, SymplecticOp, gate, parse_word, word_to_symplectic
from src.clifford.tableau import SignedPauli
from src.codes.cc import CcCode
from src.codes.logical import LogicalBasis, clustered_basis
from src.codes.seeds import load_seed
from src.utils.errors import InputError, VerificationError
from src.utils.logger import app_logger

CASE_STUDY_SEED = "cc_24_8_3"
DATA_LOGICALS = (2, 4, 6, 8)
AUX_LOGICALS = (1, 3, 5, 7)


@lru_cache(maxsize=1)
def case_study_code() -> CcCode:
    return load_seed(CASE_STUDY_SEED).build()


def operator_product(text: str) -> List[Gate]:
    """An operator product such as "SWAP(1,6) SWAP(6,7)" as a time-ordered word; the rightmost factor acts first"""
    return list(reversed(parse_word(text)))


@dataclass(frozen=True)
class Orientation:
    """Printed label c p + j + 1 sits on column c p + (sign j + shift) mod p"""

    sign: int = -1
    shift: int = 0

    def column(self, label: int, p: int) -> int:
        if label < 1:
            raise InputError(f"physical labels start at 1, got {label}")
        c, j = divmod(label - 1, p)
        return c * p + (self.sign * j + self.shift) % p

    def candidates(self, p: int) -> List["Orientation"]:
        out = [self]
        out += [Orientation(s, t) for s in (-1, 1) for t in range(p) if (s, t) != (self.sign, self.shift)]
        return out


@dataclass(frozen=True)
class PhysOp:
    """
    A printed physical operation

    Either a swap circuit (time order, printed 1-based labels) optionally
    followed by H on every qubit, or a fold gate given by the diagonal A_S and
    the symmetric A_CZ over the ring.
    """

    description: str
    swaps: Tuple[Tuple[int, int], ...] = ()
    global_h: bool = False
    a_s: Optional[RingMatrix] = None
    a_cz: Optional[RingMatrix] = None
    logical_phases: Tuple[Tuple[int, GateKind], ...] = ()

    @property
    def is_fold(self) -> bool:
        return self.a_s is not None

    @classmethod
    def permutation(cls, description: str, swaps: Sequence[Tuple[int, int]], global_h: bool = False) -> "PhysOp":
        return cls(description, tuple((int(a), int(b)) for a, b in swaps), global_h)

    @classmethod
    def fold(
        cls, description: str, a_s: RingMatrix, a_cz: RingMatrix, logical_phases: Dict[int, GateKind]
    ) -> "PhysOp":
        diag = {i + 1 for i in range(a_s.rows) if not a_s[i, i].is_zero()}
        if diag != set(logical_phases):
            raise InputError(f"phase pattern on clusters {sorted(logical_phases)} differs from A_S support {sorted(diag)}")
        if a_cz.conj_transpose() != a_cz or not a_cz.is_zero_one():
            raise InputError("A_CZ must be a symmetric 0/1 matrix")
        return cls(description, a_s=a_s, a_cz=a_cz, logical_phases=tuple(sorted(logical_phases.items())))

    def content_map(self, n: int, orientation: Orientation, p: int) -> np.ndarray:
        """at[q] is the original qubit whose content ends on qubit q"""
        at = np.arange(n)
        for a, b in self.swaps:
            qa, qb = orientation.column(a, p), orientation.column(b, p)
            at[[qa, qb]] = at[[qb, qa]]
        return at

    def word(self, code: CcCode, orientation: Orientation) -> List[Gate]:
        """Time-ordered physical circuit on 0-based columns"""
        p = code.p
        if not self.is_fold:
            out = [gate(GateKind.SWAP, orientation.column(a, p), orientation.column(b, p)) for a, b in self.swaps]
            if self.global_h:
                out.append(gate(GateKind.HALL))
            return out

        out = []
        for cluster, kind in self.logical_phases:
            physical = kind if p % 4 == 1 else {GateKind.S: GateKind.SDG, GateKind.SDG: GateKind.S}[kind]
            out += [gate(physical, q) for q in range((cluster - 1) * p, cluster * p)]
        lifted = self.a_cz.binary_lift().to_array()
        for q, r in zip(*np.nonzero(np.triu(lifted, 1))):
            out.append(gate(GateKind.CZ, int(q), int(r)))
        return out


def preserves_by_span(code: CcCode, op: PhysOp, orientation: Orientation) -> bool:
    """Row spans of the permuted checks equal the originals, X and Z exchanged under global H"""
    if op.is_fold:
        raise InputError("row-span preservation applies to swap circuits")
    at = op.content_map(code.n_phys, orientation, code.p)
    hx, hz = code.bhx.select_columns(at), code.bhz.select_columns(at)
    if op.global_h:
        hx, hz = hz, hx
    return gf2.same_row_space(hx, code.bhx) and gf2.same_row_space(hz, code.bhz)


def resolve_orientation(code: CcCode, ops: Sequence[PhysOp], preferred: Orientation = Orientation()) -> Orientation:
    """First label orientation under which every swap circuit preserves the stabilizer group"""
    for candidate in preferred.candidates(code.p):
        if all(preserves_by_span(code, op, candidate) for op in ops if not op.is_fold):
            if candidate != preferred:
                app_logger.info(f"Printed labels resolved with orientation {candidate}")
            return candidate
    raise VerificationError("printed swap circuits preserve the stabilizer group", "no label orientation works")


def _reduce(code: CcCode, basis: LogicalBasis, image: SignedPauli) -> SignedPauli:
    """Logical operator i^k Xbar(a) Zbar(b) acting like a normalizer element on the code space"""
    x = np.asarray(image.x, dtype=np.int64)
    z = np.asarray(image.z, dtype=np.int64)
    a, b = basis.coordinates(x, z)
    xa = (a @ basis.x_reps.astype(np.int64)) & 1
    zb = (b @ basis.z_reps.astype(np.int64)) & 1
    if not gf2.row_space_contains(code.bhx, x ^ xa) or not gf2.row_space_contains(code.bhz, z ^ zb):
        raise VerificationError("image lies in the normalizer", "a conjugated operator leaves stabilizers plus logicals")
    inverse = SignedPauli.from_bits(xa, zb, 2 * int(xa @ zb))
    residual = inverse * image
    return SignedPauli.from_bits(a, b, residual.k)


def logical_images(code: CcCode, basis: LogicalBasis, word: Sequence[Gate]) -> List[SignedPauli]:
    """Images of Xbar_1..Xbar_k then Zbar_1..Zbar_k with exact phases"""
    n = code.n_phys
    zero = np.zeros(n, dtype=np.uint8)
    images = []
    for reps, is_x in ((basis.x_reps, True), (basis.z_reps, False)):
        for rep in reps:
            pauli = SignedPauli.from_bits(rep, zero) if is_x else SignedPauli.from_bits(zero, rep)
            images.append(_reduce(code, basis, pauli.conjugate_word(word)))
    return images


def stabilizer_images_trivial(code: CcCode, basis: LogicalBasis, word: Sequence[Gate]) -> bool:
    """Every check maps to a +1 stabilizer"""
    n = code.n_phys
    zero = np.zeros(n, dtype=np.uint8)
    rows = [SignedPauli.from_bits(r, zero) for r in code.bhx.to_array()]
    rows += [SignedPauli.from_bits(zero, r) for r in code.bhz.to_array()]
    for row in rows:
        try:
            image = _reduce(code, basis, row.conjugate_word(word))
        except VerificationError:
            return False
        if image.k or any(image.x) or any(image.z):
            return False
    return True


def images_to_symplectic(images: Sequence[SignedPauli]) -> SymplecticOp:
    cols = [list(im.x) + list(im.z) for im in images]
    return SymplecticOp.from_array(np.array(cols, dtype=np.uint8).T)


def expected_images(label_word: Sequence[Gate], k: int) -> List[SignedPauli]:
    zero = (0,) * k
    units = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    gens = [SignedPauli(0, u, zero) for u in units] + [SignedPauli(0, zero, u) for u in units]
    return [g.conjugate_word(label_word) for g in gens]


class LogicalAction(BaseModel):
    """Logical action of a physical operation on the clustered basis"""

    name: str
    label: str
    matrix: List[List[int]]
    matches_label: bool
    phases_match: bool
    stabilizers_preserved: bool
    checks: Dict[str, bool] = {}

    def op(self) -> SymplecticOp:
        return SymplecticOp.from_array(self.matrix)

    @property
    def passed(self) -> bool:
        return self.matches_label and self.phases_match and self.stabilizers_preserved and all(self.checks.values())


def word_action(
    code: CcCode, name: str, word: Sequence[Gate], label: str, checks: Optional[Dict[str, bool]] = None
) -> LogicalAction:
    """
    Logical action of a physical circuit against a labeled logical operator product

    Args:
        code: The case-study code
        name: Report name
        word: Physical circuit in time order
        label: Expected logical operator product, rightmost factor first
        checks: Extra named identities already evaluated by the caller

    Returns:
        LogicalAction; symplectic matrix and exact signs compared with the label
    """
    basis = clustered_basis(code)
    preserved = stabilizer_images_trivial(code, basis, word)
    images = logical_images(code, basis, word)
    label_word = operator_product(label)
    expected = expected_images(label_word, basis.k)
    action = LogicalAction(
        name=name,
        label=label,
        matrix=images_to_symplectic(images).to_array().tolist(),
        matches_label=images_to_symplectic(images) == word_to_symplectic(label_word, basis.k),
        phases_match=all(a == b for a, b in zip(images, expected)),
        stabilizers_preserved=preserved,
        checks=dict(checks or {}),
    )
    level = "exact phases" if action.phases_match else "symplectic level only"
    app_logger.info(f"{name}: label {label!r} matches={action.matches_label} ({level})")
    return action


def permutation_summary(op: SymplecticOp) -> Optional[str]:
    """Cycle notation of L(P), or of L(P) followed by " HALL"; None for other operators"""
    k = op.m
    mat = op.to_array()
    suffix = ""
    hall = word_to_symplectic([gate(GateKind.HALL)], k)
    if np.any(mat[k:, :k]) and not np.any(mat[:k, :k]):
        mat = (op @ hall).to_array()
        suffix = " HALL"
    top, bottom = mat[:k, :k], mat[k:, k:]
    if np.any(mat[:k, k:]) or np.any(mat[k:, :k]) or not np.array_equal(top, bottom):
        return None
    if not (top.sum(axis=0) == 1).all() or not (top.sum(axis=1) == 1).all():
        return None
    # logical content j moves to dest[j]
    dest = [int(np.flatnonzero(top[:, j])[0]) for j in range(k)]
    cycles, seen = [], set()
    for start in range(k):
        cycle, q = [], start
        while q not in seen:
            seen.add(q)
            cycle.append(q + 1)
            q = dest[q]
        if len(cycle) > 1:
            cycles.append("(" + " ".join(map(str, cycle)) + ")")
    body = "".join(cycles)
    if not body:
        return suffix.strip() or "I"
    return body + suffix
